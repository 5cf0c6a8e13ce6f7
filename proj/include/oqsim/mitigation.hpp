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

// Pauli and depolarizing noise channels: application, fitting, inversion,
// twirling and projection back onto physical states.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "oqsim/matkernel.hpp"

namespace oqsim {

struct PauliChannel {
    std::size_t num_qubits = 0;
    /// One probability per Pauli string, base-4 index (0 = identity).
    std::vector<double> epsilons;

    static PauliChannel identity(std::size_t num_qubits);
    /// Throws ValidationError unless eps >= 0 and sum eps = 1 within 1e-10.
    void validate() const;
};

struct DepolarizingChannel {
    std::size_t num_qubits = 0;
    double lambda = 0.0;

    void validate() const;
};

/// eps_0 rho + sum_i eps_i P_i rho P_i.
DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho);

/// (1 - lambda) rho + lambda I / 2^N.
DensityMatrix apply_qdc(const DepolarizingChannel& ch, const DensityMatrix& rho);

/// sum_i eps_i P_i (x) conj(P_i) on row-major vec(rho).
Matrix channel_superoperator(const PauliChannel& ch);

struct InversionDiagnostics {
    std::size_t rank = 0;
    std::size_t full_rank = 0;
    double smallest_singular = 0.0;
    double largest_singular = 0.0;
    double rcond = 0.0;  // smallest / largest singular value
};

/// unvec(A^+ vec(rho)). Output is raw.
DensityMatrix invert_channel(const PauliChannel& ch, const DensityMatrix& noisy,
                             InversionDiagnostics* diagnostics = nullptr);
/// (rho - lambda I / 2^N) / (1 - lambda). Output is raw.
DensityMatrix invert_channel(const DepolarizingChannel& ch, const DensityMatrix& noisy);

/// Pair of (exact, noisy) states.
using StatePair = std::pair<DensityMatrix, DensityMatrix>;

struct PauliFitReport {
    PauliChannel channel;
    /// Sum of eps before renormalizing onto the simplex.
    double raw_sum = 0.0;
    /// Mean squared Frobenius residual at each accepted iterate.
    std::vector<double> objective_history;
    std::size_t iterations = 0;
    /// Norm of the projected gradient at the solution.
    double kkt_residual = 0.0;
    bool converged = false;
};

inline constexpr double kFitKktTolerance = 1e-8;

/// Non-negative least squares for eps over mean ||A_eps vec(rho) - vec(rho~)||^2,
/// then renormalized to sum 1.
PauliFitReport fit_pauli_channel(const std::vector<StatePair>& pairs);

enum class LambdaStrategy { FidelityMax, FrobeniusMin };

struct LambdaFitReport {
    double lambda = 0.0;
    double score = 0.0;  // mean fidelity, or mean squared Frobenius error
    std::vector<std::pair<double, double>> grid;  // (lambda, score) scan
};

LambdaFitReport fit_qdc_lambda_report(const std::vector<StatePair>& pairs, LambdaStrategy strategy);
double fit_qdc_lambda(const std::vector<StatePair>& pairs, LambdaStrategy strategy);

/// Clip negative eigenvalues and renormalize. Throws NumericalError when
/// nothing positive survives.
DensityMatrix project_physical(const DensityMatrix& rho);

/// (rho + tau rho tau) / 2 for a Hermitian unitary involution tau.
DensityMatrix parity_twirl(const DensityMatrix& rho, const Matrix& parity_op);

}  // namespace oqsim
