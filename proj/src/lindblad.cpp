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

#include "oqsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace oqsim {

namespace {

Matrix identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n);
}

struct Projection {
    cplx coefficient;
    double residual;  // relative to ||L||
};

// Best scalar c with C ~ c L in the Frobenius sense.
Projection project_onto(const Matrix& c, const Matrix& l) {
    const double ll = l.squaredNorm();
    const cplx coeff = frobenius_inner(l, c) / ll;
    const double res = (c - coeff * l).norm() / std::sqrt(ll);
    return {coeff, res};
}

double rel_norm(const Matrix& c, double scale) {
    return c.norm() / std::max(1.0, scale);
}

// Shared constant across operators: all per-operator values agree.
std::optional<cplx> shared_value(const std::vector<cplx>& values) {
    if (values.empty()) {
        return cplx{0.0, 0.0};
    }
    for (const cplx& v : values) {
        if (std::abs(v - values.front()) > kConditionResidual * std::max(1.0, std::abs(values.front()))) {
            return std::nullopt;
        }
    }
    return values.front();
}

void require_dims(const LindbladModel& model, const DensityMatrix& rho0, const char* what) {
    if (rho0.dim() != model.dim()) {
        throw ValidationError(std::string(what) + ": state dimension does not match the model");
    }
}

}  // namespace

void LindbladModel::validate() const {
    if (hamiltonian.rows() == 0 || !is_square(hamiltonian)) {
        throw ValidationError("LindbladModel: Hamiltonian must be a non-empty square matrix");
    }
    if (!hamiltonian.allFinite() || !is_hermitian(hamiltonian)) {
        throw ValidationError("LindbladModel: Hamiltonian must be Hermitian");
    }
    if (lindblads.size() != gammas.size()) {
        throw ValidationError("LindbladModel: one damping rate is required per Lindblad operator");
    }
    for (std::size_t n = 0; n < lindblads.size(); ++n) {
        const Matrix& l = lindblads[n];
        if (l.rows() != hamiltonian.rows() || l.cols() != hamiltonian.cols()) {
            throw ValidationError("LindbladModel: Lindblad operator " + std::to_string(n) +
                                  " has the wrong shape");
        }
        if (!l.allFinite()) {
            throw ValidationError("LindbladModel: non-finite Lindblad entry");
        }
        if (!(gammas[n] > 0.0) || !std::isfinite(gammas[n])) {
            throw ValidationError("LindbladModel: damping rates must be positive");
        }
    }
}

std::string ConditionReport::failure_summary() const {
    static constexpr const char* kNames[] = {
        "(i) [H, L^+L] = 0",
        "(ii) [L^+L, L'^+L'] = 0",
        "(iii) [H, L] = nu L",
        "(iv) sum g [L'^+L', L] = lambda L",
    };
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!satisfied[i]) {
            if (!out.empty()) {
                out += "; ";
            }
            out += kNames[i];
        }
    }
    return out;
}

ConditionReport check_conditions(const LindbladModel& model) {
    model.validate();
    const Matrix& h = model.hamiltonian;
    const std::size_t n_ops = model.num_lindblads();
    for (const Matrix& l : model.lindblads) {
        if (max_abs_entry(l) == 0.0) {
            throw ValidationError("check_conditions: zero Lindblad operator");
        }
    }

    std::vector<Matrix> ldl(n_ops);
    for (std::size_t n = 0; n < n_ops; ++n) {
        ldl[n] = model.lindblads[n].adjoint() * model.lindblads[n];
    }

    ConditionReport report;
    report.satisfied.fill(true);

    for (std::size_t n = 0; n < n_ops; ++n) {
        const double r = rel_norm(commutator(h, ldl[n]), h.norm() * ldl[n].norm());
        report.residuals[0] = std::max(report.residuals[0], r);
    }
    report.satisfied[0] = report.residuals[0] < kConditionResidual;

    for (std::size_t a = 0; a < n_ops; ++a) {
        for (std::size_t b = a + 1; b < n_ops; ++b) {
            const double r = rel_norm(commutator(ldl[a], ldl[b]), ldl[a].norm() * ldl[b].norm());
            report.residuals[1] = std::max(report.residuals[1], r);
        }
    }
    report.satisfied[1] = report.residuals[1] < kConditionResidual;

    // (iii): nu_n from projecting [H, L_n] onto L_n.
    bool each_nu_ok = true;
    for (std::size_t n = 0; n < n_ops; ++n) {
        const Matrix& l = model.lindblads[n];
        const Projection p = project_onto(commutator(h, l), l);
        const double r = p.residual / std::max(1.0, h.norm());
        report.per_operator_nu.push_back(p.coefficient);
        report.residuals[2] = std::max(report.residuals[2], r);
        each_nu_ok = each_nu_ok && r < kConditionResidual;
    }
    const std::optional<cplx> nu = shared_value(report.per_operator_nu);
    report.satisfied[2] = each_nu_ok && nu.has_value();
    if (nu) {
        report.nu = *nu;
        report.satisfied[2] = report.satisfied[2] && nu->imag() >= -kConditionResidual;
    } else if (each_nu_ok) {
        const double im0 = report.per_operator_nu.front().imag();
        report.shared_nu_near_miss = std::all_of(
            report.per_operator_nu.begin(), report.per_operator_nu.end(),
            [&](const cplx& v) { return std::abs(v.imag() - im0) <= kConditionResidual; });
    }

    // (iv): lambda_n from projecting sum_n' g_n' [L_n'^+L_n', L_n] onto L_n.
    Matrix weighted = Matrix::Zero(h.rows(), h.cols());
    for (std::size_t n = 0; n < n_ops; ++n) {
        weighted += model.gammas[n] * ldl[n];
    }
    bool each_lambda_ok = true;
    for (std::size_t n = 0; n < n_ops; ++n) {
        const Matrix& l = model.lindblads[n];
        const Projection p = project_onto(commutator(weighted, l), l);
        const double r = p.residual / std::max(1.0, weighted.norm());
        report.per_operator_lambda.push_back(p.coefficient);
        report.residuals[3] = std::max(report.residuals[3], r);
        each_lambda_ok = each_lambda_ok && r < kConditionResidual;
    }
    const std::optional<cplx> lambda = shared_value(report.per_operator_lambda);
    report.satisfied[3] = each_lambda_ok && lambda.has_value();
    if (lambda) {
        report.lambda_const = *lambda;
        report.satisfied[3] = report.satisfied[3] && lambda->real() <= kConditionResidual;
    }

    report.alpha = std::max(0.0, 2.0 * report.nu.imag() - report.lambda_const.real());
    report.f_kind = report.alpha < kAlphaZero ? FKind::Linear : FKind::Saturating;
    return report;
}

Matrix hamiltonian_superoperator(const LindbladModel& model) {
    const Matrix id = identity(model.dim());
    return -kI * (kron(model.hamiltonian, id) - kron(id, model.hamiltonian.transpose()));
}

Matrix dissipator_superoperator(const LindbladModel& model) {
    const std::size_t d = model.dim();
    const Matrix id = identity(d);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    for (std::size_t n = 0; n < model.num_lindblads(); ++n) {
        const Matrix& l = model.lindblads[n];
        const Matrix ldl = l.adjoint() * l;
        out += model.gammas[n] * (kron(l, l.conjugate()) - 0.5 * kron(ldl, id) -
                                  0.5 * kron(id, ldl.transpose()));
    }
    return out;
}

Matrix build_superoperator(const LindbladModel& model) {
    model.validate();
    return hamiltonian_superoperator(model) + dissipator_superoperator(model);
}

ExactEvolver::ExactEvolver(const LindbladModel& model)
    : dim_(model.dim()), generator_(build_superoperator(model)) {}

DensityMatrix ExactEvolver::evolve(const DensityMatrix& rho0, double t) const {
    if (rho0.dim() != dim_) {
        throw ValidationError("exact_evolve: state dimension does not match the model");
    }
    if (!(t >= 0.0)) {
        throw ValidationError("exact_evolve: time must be non-negative");
    }
    if (t == 0.0) {
        return rho0;
    }
    const Vector out = matexp(t * generator_) * vec(rho0.matrix());
    return DensityMatrix::physical(hermitian_part(unvec(out, dim_)), 1e-9);
}

DensityMatrix exact_evolve(const LindbladModel& model, const DensityMatrix& rho0, double t) {
    require_dims(model, rho0, "exact_evolve");
    return ExactEvolver(model).evolve(rho0, t);
}

DensityMatrix trotter_evolve(const LindbladModel& model, const DensityMatrix& rho0, double t,
                             std::size_t steps, TrotterSplit /*split*/) {
    model.validate();
    require_dims(model, rho0, "trotter_evolve");
    if (steps == 0) {
        throw ValidationError("trotter_evolve: steps must be at least 1");
    }
    if (!(t >= 0.0)) {
        throw ValidationError("trotter_evolve: time must be non-negative");
    }
    const double dt = t / static_cast<double>(steps);
    const Matrix half_h = matexp(0.5 * dt * hamiltonian_superoperator(model));
    const Matrix full_d = matexp(dt * dissipator_superoperator(model));
    const Matrix step = half_h * full_d * half_h;

    Vector v = vec(rho0.matrix());
    for (std::size_t s = 0; s < steps; ++s) {
        v = step * v;
    }
    return DensityMatrix::physical(hermitian_part(unvec(v, model.dim())), 1e-9);
}

LindbladModel normalize_lindblads(const LindbladModel& model) {
    model.validate();
    LindbladModel out = model;
    for (std::size_t n = 0; n < model.num_lindblads(); ++n) {
        const double b = spectral_norm(model.lindblads[n]);
        if (!(b > 0.0)) {
            throw ValidationError("normalize_lindblads: zero Lindblad operator");
        }
        out.lindblads[n] = model.lindblads[n] / b;
        out.gammas[n] = model.gammas[n] * b * b;
    }
    return out;
}

}  // namespace oqsim
