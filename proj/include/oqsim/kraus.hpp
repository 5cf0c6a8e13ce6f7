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

// Time-perturbative Kraus series for Lindblad models that satisfy the
// commutation conditions audited by check_conditions().
//
// Every term has the shape
//
//     K_{m,k}(t) = a_{m,k} T(t) L_{k_1} L_{k_2} ... L_{k_m},
//     a_{m,k}    = sqrt(f(t)^m / m!) prod_i sqrt(g_{k_i}),
//
// with T(t) = exp(-i t H_eff) a contraction and f(t) either t or the
// saturating (1 - e^{-alpha t}) / alpha. When every L_n generates a finite
// cyclic (semi)group the infinite series collapses to a finite sum whose
// weights are generalized hyperbolic functions.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oqsim/lindblad.hpp"
#include "oqsim/matkernel.hpp"

namespace oqsim {

struct KrausTerm {
    std::size_t order = 0;
    /// Lindblad index per factor, leftmost factor applied last.
    std::vector<std::size_t> indices;
    /// Scalar a_{m,k}; operator already includes it.
    double weight = 1.0;
    Matrix op;
};

struct KrausSeries {
    std::vector<KrausTerm> terms;
    std::size_t truncation_order = 0;
    /// Upper bound on the trace weight discarded by truncation.
    double tail_bound = 0.0;
    double time = 0.0;
    std::size_t dim() const { return terms.empty() ? 0 : static_cast<std::size_t>(terms.front().op.rows()); }
};

/// Per-Lindblad cyclic structure: L^period = c I (theta = |c|^2) or L^period = 0 (theta = 0).
struct GroupStructure {
    std::vector<std::size_t> periods;
    std::vector<double> thetas;

    bool abelian() const;  // every theta > 0
};

/// Norm below which a Kraus operator is dropped.
inline constexpr double kTermPruneNorm = 1e-14;
/// Refuse perturbative series with more terms than this.
inline constexpr std::size_t kMaxSeriesTerms = 4'000'000;

/// f(t) = t when alpha = 0, else (1 - e^{-alpha t}) / alpha.
double f_of_t(double alpha, double t);

/// H - (i/2) sum g L^+L.
Matrix effective_hamiltonian(const LindbladModel& model);

/// Joint eigenbasis of H and sum g L^+L, so that
/// T(t) = U diag(e^{-i E_j t}) diag(e^{-r_j t}) U^+.
class EffectiveEvolution {
  public:
    explicit EffectiveEvolution(const LindbladModel& model);

    Matrix at(double t) const;

    /// False when H_eff is not normal in H's eigenbasis; at() then falls back
    /// to a dense exponential and the diagonal accessors are unavailable.
    bool diagonalizable() const { return diagonalizable_; }
    /// True when the joint eigenbasis is the computational basis.
    bool computational_basis() const { return computational_basis_; }

    const Matrix& basis() const { return basis_; }
    const RealVector& energies() const { return energies_; }
    const RealVector& decay_rates() const { return decay_rates_; }

    /// e^{-r_j t}, the entries of the contraction Lambda(t).
    RealVector contraction(double t) const;
    /// -E_j t, the phases of W(t).
    RealVector phases(double t) const;

  private:
    Matrix h_eff_;
    Matrix basis_;
    RealVector energies_;
    RealVector decay_rates_;
    bool diagonalizable_ = false;
    bool computational_basis_ = false;
};

/// T(t) = exp(-i t H_eff). Sets *used_fallback when the diagonal route was
/// unavailable.
Matrix effective_evolution(const LindbladModel& model, double t, bool* used_fallback = nullptr);

/// Perturbative series up to order `max_order`; all (m, k) terms in
/// lexicographic order.
KrausSeries build_tp_series(const LindbladModel& model, double t, std::size_t max_order);

/// sum_K K rho K^+ with compensated summation. `renormalize` divides by the trace.
DensityMatrix apply_series(const KrausSeries& series, const DensityMatrix& rho0,
                           bool renormalize = false);

/// F^theta_{ell,m}(x) = (1/ell) theta^{-m/ell} sum_k w^{-mk} exp(w^k theta^{1/ell} x),
/// w = e^{2 pi i / ell}; theta = 0 gives x^m / m!.
double gen_hyperbolic(std::size_t ell, std::size_t m, double theta, double x);

/// Operator-level detection of L^ell = c I or L^ell = 0 plus pairwise
/// commutation up to a phase. Empty when any operator lacks structure.
std::optional<GroupStructure> detect_group_structure(const LindbladModel& model);

/// Finite exact series sum over m_n < ell_n of
/// T(t) prod_n sqrt(F^{theta_n}_{ell_n, m_n}(g_n f(t))) L_n^{m_n}.
KrausSeries build_reduced_series(const LindbladModel& model, double t);

/// Stinespring form of the factored group evolution: an isometry from the
/// system into system (x) ancilla registers, one register of size ell_n per
/// Lindblad operator. Tracing out the registers recovers the channel.
struct FactoredEvolution {
    Matrix isometry;                        // (dim * ancilla_dim) x dim
    std::vector<std::size_t> register_dims;  // ell_n
    std::size_t system_dim = 0;
    std::size_t ancilla_dim() const;
    /// Rescaled L'_n = L_n / theta_n^{1/(2 ell_n)} and g'_n = theta_n^{1/ell_n} g_n.
    std::vector<Matrix> rescaled_lindblads;
    std::vector<double> rescaled_gammas;

    /// Tr_anc[S rho S^+].
    DensityMatrix apply(const DensityMatrix& rho) const;
};

/// Amplitudes sqrt(e^{-g' t} F^1_{ell,m}(g' t)) for m < ell; a unit vector.
std::vector<double> hyperbolic_distribution(std::size_t ell, double rescaled_gamma, double t);

FactoredEvolution build_factored_evolution(const LindbladModel& model, double t);

}  // namespace oqsim
