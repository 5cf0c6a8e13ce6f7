// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Phase-space read-out for Fock-truncated oscillators: quadratures,
// Hermite-Gauss densities, Wigner functions and a damped-oscillator fit.
// Quadratures are x0 = (a^+ + a)/sqrt(2) and p0 = i(a^+ - a)/sqrt(2).

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "oqsim/matkernel.hpp"

namespace oqsim {

struct PhaseSpaceGrid {
    RealVector x;
    RealVector p;

    /// Uniform square grid on [-half_width, half_width] with the given step.
    static PhaseSpaceGrid uniform(double half_width, double step);
    /// +-5 with step 0.05.
    static PhaseSpaceGrid standard();

    double dx() const;
    double dp() const;
    void validate() const;
};

/// Values over (x, p) with rows indexed by x and columns by p.
using Field = Eigen::MatrixXd;

struct Quadrature {
    double x = 0.0;
    double p = 0.0;
};

/// (<x0>, <p0>) per mode operator.
std::vector<Quadrature> quadrature_expectations(const DensityMatrix& rho,
                                                const std::vector<Matrix>& mode_ops);

enum class DensityKind { Position, Momentum };

/// Normalized Hermite functions psi_0..psi_n_max at x.
RealVector hermite_functions(std::size_t n_max, double x);

/// Generalized Laguerre polynomial L_n^{(k)}(x) by recurrence.
double laguerre(std::size_t n, double k, double x);

/// Single-mode density over grid.x (Position) or grid.p (Momentum).
RealVector position_density(const DensityMatrix& rho, const PhaseSpaceGrid& grid,
                            DensityKind which = DensityKind::Position);

/// Two-mode joint density with basis index n1 * levels + n2; both axes use
/// grid.x (Position) or grid.p (Momentum).
Field joint_density(const DensityMatrix& rho, std::size_t levels_per_mode, const PhaseSpaceGrid& grid,
                    DensityKind which = DensityKind::Position);

/// Single-mode Wigner function. `num_modes` other than 1 is rejected.
Field wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid, std::size_t num_modes = 1);
double wigner_at(const DensityMatrix& rho, double x, double p);

/// Trapezoid rule.
double integrate(const RealVector& values, double step);
double integrate(const Field& values, double dx, double dp);

struct OscillatorFit {
    double amplitude = 0.0;
    double frequency = 0.0;
    double damping = 0.0;
    double phase = 0.0;
    /// Root-mean-square residual over all x and p samples.
    double residual = 0.0;
};

/// Least-squares fit of x = A e^{-k t} cos(w t + phi), p = -A e^{-k t} sin(w t + phi).
OscillatorFit fit_damped_oscillator(const std::vector<double>& times, const std::vector<double>& x,
                                    const std::vector<double>& p);

}  // namespace oqsim
