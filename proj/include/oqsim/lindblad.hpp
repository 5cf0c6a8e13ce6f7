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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "oqsim/matkernel.hpp"

namespace oqsim {

/// Markovian generator d rho/dt = -i[H, rho] + sum_n g_n (L rho L^+ - {L^+L, rho}/2),
/// with hbar = 1.
struct LindbladModel {
    Matrix hamiltonian;
    std::vector<Matrix> lindblads;
    std::vector<double> gammas;

    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian.rows()); }
    std::size_t num_lindblads() const { return lindblads.size(); }

    /// Throws ValidationError unless H is Hermitian, every operator is
    /// dim x dim, the rate list matches and every rate is positive.
    void validate() const;
};

enum class FKind { Linear, Saturating };

/// Outcome of the commutation-condition audit that gates the Kraus series.
///
/// Condition indices 0..3 correspond to
///   (i)   [H, L^+L] = 0
///   (ii)  [L^+L, L'^+L'] = 0
///   (iii) [H, L] = nu L with one nu shared by all L, Im(nu) >= 0
///   (iv)  sum_n' g_n' [L'^+L', L] = lambda L with one shared lambda, Re(lambda) <= 0
struct ConditionReport {
    std::array<bool, 4> satisfied{};
    std::array<double, 4> residuals{};  // worst relative residual per condition
    cplx nu{0.0, 0.0};
    cplx lambda_const{0.0, 0.0};
    double alpha = 0.0;
    FKind f_kind = FKind::Linear;
    std::vector<cplx> per_operator_nu;
    std::vector<cplx> per_operator_lambda;
    /// Every L has its own nu_n but they disagree while Im(nu_n) match.
    bool shared_nu_near_miss = false;

    bool all_satisfied() const {
        return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3];
    }
    /// Human-readable list of failing conditions, empty when all hold.
    std::string failure_summary() const;
};

inline constexpr double kConditionResidual = 1e-8;
inline constexpr double kAlphaZero = 1e-12;

ConditionReport check_conditions(const LindbladModel& model);

/// Generator acting on row-major vec(rho):
///   D = -i(H (x) I - I (x) H^T) + sum g [L (x) conj(L) - (L^+L (x) I)/2 - (I (x) (L^+L)^T)/2]
Matrix build_superoperator(const LindbladModel& model);
Matrix hamiltonian_superoperator(const LindbladModel& model);
Matrix dissipator_superoperator(const LindbladModel& model);

/// Dense propagator exp(tD) applied to vec(rho0).
DensityMatrix exact_evolve(const LindbladModel& model, const DensityMatrix& rho0, double t);

/// Caches D so a grid of times only pays for the exponentials.
class ExactEvolver {
  public:
    explicit ExactEvolver(const LindbladModel& model);
    DensityMatrix evolve(const DensityMatrix& rho0, double t) const;
    const Matrix& generator() const { return generator_; }

  private:
    std::size_t dim_;
    Matrix generator_;
};

enum class TrotterSplit { HamiltonianVsDissipator };

/// Symmetric second-order product [e^{dt D1/2} e^{dt D2} e^{dt D1/2}]^steps.
DensityMatrix trotter_evolve(const LindbladModel& model, const DensityMatrix& rho0, double t,
                             std::size_t steps,
                             TrotterSplit split = TrotterSplit::HamiltonianVsDissipator);

/// L_n -> L_n / ||L_n||, g_n -> ||L_n||^2 g_n. Leaves the generator unchanged.
LindbladModel normalize_lindblads(const LindbladModel& model);

}  // namespace oqsim
