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

#include "oqsim/kraus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oqsim {

namespace {

constexpr double kDiagonalTol = 1e-12;
constexpr double kStructureTol = 1e-10;

Matrix identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n);
}

bool is_diagonal(const Matrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j && std::abs(a(i, j)) > kDiagonalTol) {
                return false;
            }
        }
    }
    return true;
}

Matrix decay_generator(const LindbladModel& model) {
    Matrix g = Matrix::Zero(model.hamiltonian.rows(), model.hamiltonian.cols());
    for (std::size_t n = 0; n < model.num_lindblads(); ++n) {
        g += model.gammas[n] * model.lindblads[n].adjoint() * model.lindblads[n];
    }
    return g;
}

Matrix matrix_power(const Matrix& a, std::size_t k) {
    Matrix out = identity(static_cast<std::size_t>(a.rows()));
    for (std::size_t i = 0; i < k; ++i) {
        out = out * a;
    }
    return out;
}

double factorial(std::size_t m) {
    return std::tgamma(static_cast<double>(m) + 1.0);
}

void require_conditions(const LindbladModel& model, const char* what, ConditionReport* out) {
    ConditionReport report = check_conditions(model);
    if (!report.all_satisfied()) {
        throw ValidationError(std::string(what) + ": conditions not satisfied: " +
                              report.failure_summary());
    }
    if (out != nullptr) {
        *out = std::move(report);
    }
}

void require_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError(std::string(what) + ": time must be finite and non-negative");
    }
}

// Sum_{m > M} x^m / m!, accumulated from the first omitted term.
double exp_tail(double x, std::size_t max_order) {
    double term = 1.0;
    for (std::size_t m = 1; m <= max_order + 1; ++m) {
        term *= x / static_cast<double>(m);
    }
    double sum = 0.0;
    for (std::size_t m = max_order + 1; m < max_order + 10000; ++m) {
        sum += term;
        if (term <= 1e-18 * sum) {
            break;
        }
        term *= x / static_cast<double>(m + 1);
    }
    return sum;
}

struct Kahan {
    Matrix sum;
    Matrix carry;

    explicit Kahan(Eigen::Index d) : sum(Matrix::Zero(d, d)), carry(Matrix::Zero(d, d)) {}

    void add(const Matrix& x) {
        const Matrix y = x - carry;
        const Matrix t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

bool GroupStructure::abelian() const {
    return std::all_of(thetas.begin(), thetas.end(), [](double th) { return th > 0.0; });
}

double f_of_t(double alpha, double t) {
    if (!(alpha >= 0.0) || !(t >= 0.0)) {
        throw ValidationError("f_of_t: alpha and t must be non-negative");
    }
    if (alpha < kAlphaZero) {
        return t;
    }
    const double x = alpha * t;
    if (x < 1e-8) {
        return t * (1.0 - x / 2.0 + x * x / 6.0);
    }
    return -std::expm1(-x) / alpha;
}

Matrix effective_hamiltonian(const LindbladModel& model) {
    model.validate();
    return model.hamiltonian - 0.5 * kI * decay_generator(model);
}

EffectiveEvolution::EffectiveEvolution(const LindbladModel& model)
    : h_eff_(effective_hamiltonian(model)) {
    const Matrix& h = model.hamiltonian;
    const Matrix g = decay_generator(model);
    const auto d = h.rows();

    if (is_diagonal(h) && is_diagonal(g)) {
        basis_ = Matrix::Identity(d, d);
        energies_ = h.diagonal().real();
        decay_rates_ = 0.5 * g.diagonal().real();
        diagonalizable_ = true;
        computational_basis_ = true;
        return;
    }
    if (commutator(h, g).norm() > kConditionResidual * std::max(1.0, h.norm() * g.norm())) {
        return;
    }

    // Diagonalize H, then G inside each degenerate eigenspace of H.
    const HermitianEigen eh = herm_eig(h);
    basis_ = eh.vectors;
    const double scale = std::max(1.0, eh.values.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && eh.values(stop) - eh.values(stop - 1) < 1e-9 * scale) {
            ++stop;
        }
        const Eigen::Index width = stop - start;
        if (width > 1) {
            const Matrix block = eh.vectors.middleCols(start, width);
            const HermitianEigen eg = herm_eig(hermitian_part(block.adjoint() * g * block));
            basis_.middleCols(start, width) = block * eg.vectors;
        }
        start = stop;
    }
    energies_ = (basis_.adjoint() * h * basis_).diagonal().real();
    decay_rates_ = 0.5 * (basis_.adjoint() * g * basis_).diagonal().real();
    diagonalizable_ = true;
    computational_basis_ = false;
}

Matrix EffectiveEvolution::at(double t) const {
    require_time(t, "effective_evolution");
    if (!diagonalizable_) {
        return matexp(-kI * t * h_eff_);
    }
    Vector diag(energies_.size());
    for (Eigen::Index j = 0; j < energies_.size(); ++j) {
        diag(j) = std::exp(cplx{-decay_rates_(j) * t, -energies_(j) * t});
    }
    if (computational_basis_) {
        return diag.asDiagonal();
    }
    return basis_ * diag.asDiagonal() * basis_.adjoint();
}

RealVector EffectiveEvolution::contraction(double t) const {
    if (!diagonalizable_) {
        throw NumericalError("EffectiveEvolution: no joint eigenbasis");
    }
    return (-t * decay_rates_).array().exp().matrix();
}

RealVector EffectiveEvolution::phases(double t) const {
    if (!diagonalizable_) {
        throw NumericalError("EffectiveEvolution: no joint eigenbasis");
    }
    return -t * energies_;
}

Matrix effective_evolution(const LindbladModel& model, double t, bool* used_fallback) {
    const EffectiveEvolution ev(model);
    if (used_fallback != nullptr) {
        *used_fallback = !ev.diagonalizable();
    }
    return ev.at(t);
}

KrausSeries build_tp_series(const LindbladModel& model, double t, std::size_t max_order) {
    require_time(t, "build_tp_series");
    ConditionReport report;
    require_conditions(model, "build_tp_series", &report);

    const std::size_t n_ops = model.num_lindblads();
    double count = 0.0;
    for (std::size_t m = 0; m <= max_order; ++m) {
        count += std::pow(static_cast<double>(n_ops), static_cast<double>(m));
    }
    if (count > static_cast<double>(kMaxSeriesTerms)) {
        throw ValidationError("build_tp_series: too many terms for truncation order " +
                              std::to_string(max_order));
    }

    const double f = f_of_t(report.alpha, t);
    const Matrix tt = EffectiveEvolution(model).at(t);
    std::vector<Matrix> scaled(n_ops);
    double gamma_sum = 0.0;
    double max_norm2 = 0.0;
    for (std::size_t n = 0; n < n_ops; ++n) {
        scaled[n] = std::sqrt(model.gammas[n]) * model.lindblads[n];
        gamma_sum += model.gammas[n];
        max_norm2 = std::max(max_norm2, std::pow(spectral_norm(model.lindblads[n]), 2));
    }

    KrausSeries series;
    series.truncation_order = max_order;
    series.time = t;
    series.tail_bound = n_ops == 0 ? 0.0 : exp_tail(f * gamma_sum * max_norm2, max_order);

    // Products are grown left to right so each prefix is reused.
    struct Partial {
        std::vector<std::size_t> k;
        Matrix product;
        double gamma_product;
    };
    std::vector<Partial> level{{{}, identity(model.dim()), 1.0}};
    for (std::size_t m = 0; m <= max_order; ++m) {
        const double fm = std::sqrt(std::pow(f, static_cast<double>(m)) / factorial(m));
        std::vector<Partial> next;
        for (const Partial& p : level) {
            KrausTerm term;
            term.order = m;
            term.indices = p.k;
            term.weight = fm * std::sqrt(p.gamma_product);
            term.op = fm * (tt * p.product);
            if (spectral_norm(term.op) >= kTermPruneNorm) {
                series.terms.push_back(std::move(term));
            }
            if (m == max_order) {
                continue;
            }
            for (std::size_t n = 0; n < n_ops; ++n) {
                Matrix prod = p.product * scaled[n];
                if (max_abs_entry(prod) < kTermPruneNorm) {
                    continue;
                }
                std::vector<std::size_t> k = p.k;
                k.push_back(n);
                next.push_back({std::move(k), std::move(prod), p.gamma_product * model.gammas[n]});
            }
        }
        level = std::move(next);
    }
    return series;
}

DensityMatrix apply_series(const KrausSeries& series, const DensityMatrix& rho0, bool renormalize) {
    if (series.terms.empty()) {
        throw ValidationError("apply_series: empty series");
    }
    if (series.dim() != rho0.dim()) {
        throw ValidationError("apply_series: state dimension does not match the series");
    }
    Kahan acc(static_cast<Eigen::Index>(rho0.dim()));
    for (const KrausTerm& term : series.terms) {
        acc.add(term.op * rho0.matrix() * term.op.adjoint());
    }
    Matrix out = hermitian_part(acc.sum);
    if (renormalize) {
        const double tr = out.trace().real();
        if (!(tr > 0.0)) {
            throw NumericalError("apply_series: output trace is not positive");
        }
        out /= tr;
        return DensityMatrix::physical(out, 1e-9);
    }
    return DensityMatrix::raw(out);
}

double gen_hyperbolic(std::size_t ell, std::size_t m, double theta, double x) {
    if (ell == 0 || m >= ell) {
        throw ValidationError("gen_hyperbolic: requires 0 <= m < ell");
    }
    if (!(theta >= 0.0)) {
        throw ValidationError("gen_hyperbolic: theta must be non-negative");
    }
    if (theta == 0.0) {
        return std::pow(x, static_cast<double>(m)) / factorial(m);
    }
    const double l = static_cast<double>(ell);
    const double root = std::pow(theta, 1.0 / l);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < ell; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / l;
        const cplx w = std::polar(1.0, phase);
        const cplx w_m = std::polar(1.0, -phase * static_cast<double>(m));
        sum += w_m * std::exp(w * root * x);
    }
    const double value = sum.real() / l / std::pow(theta, static_cast<double>(m) / l);
    // Cancellation near x = 0 can leave a tiny negative residue.
    return std::max(0.0, value);
}

std::optional<GroupStructure> detect_group_structure(const LindbladModel& model) {
    model.validate();
    const std::size_t d = model.dim();
    const std::size_t max_period = 4 * d;
    GroupStructure gs;
    for (const Matrix& l : model.lindblads) {
        const double scale = std::max(1.0, spectral_norm(l));
        Matrix power = l;
        bool found = false;
        for (std::size_t ell = 1; ell <= max_period && !found; ++ell) {
            const double tol = kStructureTol * std::pow(scale, static_cast<double>(ell));
            if (max_abs_entry(power) < tol) {
                gs.periods.push_back(ell);
                gs.thetas.push_back(0.0);
                found = true;
                break;
            }
            const cplx c = power.trace() / static_cast<double>(d);
            if ((power - c * identity(d)).cwiseAbs().maxCoeff() < tol && std::abs(c) > tol) {
                gs.periods.push_back(ell);
                gs.thetas.push_back(std::norm(c));
                found = true;
                break;
            }
            power = power * l;
        }
        if (!found) {
            return std::nullopt;
        }
    }
    // Pairwise commutation up to a unit phase: L_a L_b = c L_b L_a.
    for (std::size_t a = 0; a < model.num_lindblads(); ++a) {
        for (std::size_t b = a + 1; b < model.num_lindblads(); ++b) {
            const Matrix ab = model.lindblads[a] * model.lindblads[b];
            const Matrix ba = model.lindblads[b] * model.lindblads[a];
            const double nab = ab.norm();
            const double nba = ba.norm();
            if (nab < kStructureTol && nba < kStructureTol) {
                continue;
            }
            if (nba < kStructureTol) {
                return std::nullopt;
            }
            const cplx c = frobenius_inner(ba, ab) / ba.squaredNorm();
            if (std::abs(std::abs(c) - 1.0) > 1e-8 || (ab - c * ba).norm() > 1e-8 * nab) {
                return std::nullopt;
            }
        }
    }
    return gs;
}

KrausSeries build_reduced_series(const LindbladModel& model, double t) {
    require_time(t, "build_reduced_series");
    ConditionReport report;
    require_conditions(model, "build_reduced_series", &report);
    const std::optional<GroupStructure> gs = detect_group_structure(model);
    if (!gs) {
        throw ValidationError("build_reduced_series: no finite group structure detected");
    }
    const std::size_t n_ops = model.num_lindblads();
    const double f = f_of_t(report.alpha, t);
    const Matrix tt = EffectiveEvolution(model).at(t);

    std::vector<std::vector<double>> amp(n_ops);
    std::vector<std::vector<Matrix>> powers(n_ops);
    for (std::size_t n = 0; n < n_ops; ++n) {
        const std::size_t ell = gs->periods[n];
        for (std::size_t m = 0; m < ell; ++m) {
            amp[n].push_back(std::sqrt(gen_hyperbolic(ell, m, gs->thetas[n], model.gammas[n] * f)));
            powers[n].push_back(matrix_power(model.lindblads[n], m));
        }
    }

    KrausSeries series;
    series.time = t;
    series.tail_bound = 0.0;
    std::vector<std::size_t> mv(n_ops, 0);
    while (true) {
        double weight = 1.0;
        Matrix prod = tt;
        std::vector<std::size_t> k;
        std::size_t order = 0;
        for (std::size_t n = 0; n < n_ops; ++n) {
            weight *= amp[n][mv[n]];
            prod = prod * powers[n][mv[n]];
            k.insert(k.end(), mv[n], n);
            order += mv[n];
        }
        KrausTerm term{order, std::move(k), weight, weight * prod};
        if (weight > 0.0 && spectral_norm(term.op) >= kTermPruneNorm) {
            series.truncation_order = std::max(series.truncation_order, order);
            series.terms.push_back(std::move(term));
        }
        // Odometer with the first index slowest.
        std::size_t pos = n_ops;
        while (pos > 0) {
            --pos;
            if (++mv[pos] < gs->periods[pos]) {
                break;
            }
            mv[pos] = 0;
            if (pos == 0) {
                pos = n_ops + 1;
                break;
            }
        }
        if (pos == n_ops + 1 || n_ops == 0) {
            break;
        }
    }
    if (series.terms.empty()) {
        throw NumericalError("build_reduced_series: every term vanished");
    }
    return series;
}

std::size_t FactoredEvolution::ancilla_dim() const {
    std::size_t a = 1;
    for (std::size_t r : register_dims) {
        a *= r;
    }
    return a;
}

DensityMatrix FactoredEvolution::apply(const DensityMatrix& rho) const {
    if (rho.dim() != system_dim) {
        throw ValidationError("FactoredEvolution: state dimension does not match");
    }
    const auto d = static_cast<Eigen::Index>(system_dim);
    const auto a = static_cast<Eigen::Index>(ancilla_dim());
    const Matrix big = isometry * rho.matrix() * isometry.adjoint();
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            cplx s{0.0, 0.0};
            for (Eigen::Index r = 0; r < a; ++r) {
                s += big(i * a + r, j * a + r);
            }
            out(i, j) = s;
        }
    }
    return DensityMatrix::raw(hermitian_part(out));
}

std::vector<double> hyperbolic_distribution(std::size_t ell, double rescaled_gamma, double t) {
    const double x = rescaled_gamma * t;
    std::vector<double> out(ell);
    for (std::size_t m = 0; m < ell; ++m) {
        out[m] = std::sqrt(std::exp(-x) * gen_hyperbolic(ell, m, 1.0, x));
    }
    return out;
}

FactoredEvolution build_factored_evolution(const LindbladModel& model, double t) {
    require_time(t, "build_factored_evolution");
    ConditionReport report;
    require_conditions(model, "build_factored_evolution", &report);
    if (report.alpha >= kAlphaZero) {
        throw ValidationError("build_factored_evolution: requires a linear f(t)");
    }
    const std::optional<GroupStructure> gs = detect_group_structure(model);
    if (!gs) {
        throw ValidationError("build_factored_evolution: no finite group structure detected");
    }
    if (!gs->abelian()) {
        throw ValidationError("build_factored_evolution: nilpotent factors are not supported");
    }

    FactoredEvolution fe;
    fe.system_dim = model.dim();
    fe.register_dims = gs->periods;
    const std::size_t n_ops = model.num_lindblads();
    double gamma_prime_sum = 0.0;
    std::vector<std::vector<double>> amp(n_ops);
    std::vector<std::vector<Matrix>> powers(n_ops);
    for (std::size_t n = 0; n < n_ops; ++n) {
        const double ell = static_cast<double>(gs->periods[n]);
        const double b = std::pow(gs->thetas[n], 1.0 / (2.0 * ell));
        fe.rescaled_lindblads.push_back(model.lindblads[n] / b);
        fe.rescaled_gammas.push_back(model.gammas[n] * b * b);
        gamma_prime_sum += model.gammas[n] * b * b;
        amp[n] = hyperbolic_distribution(gs->periods[n], fe.rescaled_gammas[n], t);
        for (std::size_t m = 0; m < gs->periods[n]; ++m) {
            powers[n].push_back(matrix_power(fe.rescaled_lindblads[n], m));
        }
    }

    const Matrix tt = std::exp(0.5 * gamma_prime_sum * t) * EffectiveEvolution(model).at(t);
    const auto d = static_cast<Eigen::Index>(fe.system_dim);
    const std::size_t a = fe.ancilla_dim();
    fe.isometry = Matrix::Zero(d * static_cast<Eigen::Index>(a), d);

    // Register index r decodes to (m_1, ..., m_N) with m_1 most significant.
    for (std::size_t r = 0; r < a; ++r) {
        std::size_t rest = r;
        std::vector<std::size_t> mv(n_ops);
        for (std::size_t n = n_ops; n-- > 0;) {
            mv[n] = rest % gs->periods[n];
            rest /= gs->periods[n];
        }
        double w = 1.0;
        Matrix block = tt;
        for (std::size_t n = 0; n < n_ops; ++n) {
            w *= amp[n][mv[n]];
            block = block * powers[n][mv[n]];
        }
        block *= w;
        for (Eigen::Index i = 0; i < d; ++i) {
            fe.isometry.row(i * static_cast<Eigen::Index>(a) + static_cast<Eigen::Index>(r)) = block.row(i);
        }
    }
    return fe;
}

}  // namespace oqsim
