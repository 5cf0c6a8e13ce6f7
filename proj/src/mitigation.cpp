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

#include "oqsim/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oqsim {

namespace {

constexpr double kQdcMaxLambda = 1.0 - 1e-9;
constexpr std::size_t kMaxFitIterations = 200000;

std::size_t pauli_count(std::size_t num_qubits) { return std::size_t{1} << (2 * num_qubits); }

void require_dim(std::size_t num_qubits, const DensityMatrix& rho, const char* what) {
    if (rho.dim() != (std::size_t{1} << num_qubits)) {
        throw ValidationError(std::string(what) + ": dimension mismatch");
    }
}

using RMatrix = Eigen::MatrixXd;

// Quadratic model of the fit objective: 0.5 e^T Q e - b^T e + c.
struct Quadratic {
    RMatrix q;
    RealVector b;
    double c = 0.0;

    double value(const RealVector& e) const { return 0.5 * e.dot(q * e) - b.dot(e) + c; }
    RealVector gradient(const RealVector& e) const { return q * e - b; }
};

RealVector project_nonneg(const RealVector& e) { return e.cwiseMax(0.0); }

double projected_gradient_norm(const RealVector& e, const RealVector& g) {
    return (e - project_nonneg(e - g)).norm();
}

}  // namespace

PauliChannel PauliChannel::identity(std::size_t num_qubits) {
    PauliChannel ch;
    ch.num_qubits = num_qubits;
    ch.epsilons.assign(pauli_count(num_qubits), 0.0);
    ch.epsilons[0] = 1.0;
    return ch;
}

void PauliChannel::validate() const {
    if (epsilons.size() != pauli_count(num_qubits)) {
        throw ValidationError("PauliChannel: need 4^N probabilities");
    }
    double sum = 0.0;
    for (double e : epsilons) {
        if (!(e >= 0.0)) {
            throw ValidationError("PauliChannel: probabilities must be non-negative");
        }
        sum += e;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw ValidationError("PauliChannel: probabilities must sum to 1");
    }
}

void DepolarizingChannel::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ValidationError("DepolarizingChannel: lambda must lie in [0, 1]");
    }
}

DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho) {
    ch.validate();
    require_dim(ch.num_qubits, rho, "apply_pauli_channel");
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (std::size_t i = 0; i < ch.epsilons.size(); ++i) {
        if (ch.epsilons[i] == 0.0) {
            continue;
        }
        const Matrix p = pauli_string(pauli_label(i, ch.num_qubits));
        out += ch.epsilons[i] * p * rho.matrix() * p;
    }
    out = hermitian_part(out);
    return rho.is_raw() ? DensityMatrix::raw(out) : DensityMatrix::physical(out, 1e-9);
}

DensityMatrix apply_qdc(const DepolarizingChannel& ch, const DensityMatrix& rho) {
    ch.validate();
    require_dim(ch.num_qubits, rho, "apply_qdc");
    const auto d = static_cast<Eigen::Index>(rho.dim());
    const Matrix out = (1.0 - ch.lambda) * rho.matrix() +
                       (ch.lambda / static_cast<double>(d)) * Matrix::Identity(d, d);
    return rho.is_raw() ? DensityMatrix::raw(out) : DensityMatrix::physical(out, 1e-9);
}

Matrix channel_superoperator(const PauliChannel& ch) {
    ch.validate();
    const auto d2 = static_cast<Eigen::Index>(pauli_count(ch.num_qubits));
    Matrix a = Matrix::Zero(d2, d2);
    for (std::size_t i = 0; i < ch.epsilons.size(); ++i) {
        if (ch.epsilons[i] == 0.0) {
            continue;
        }
        const Matrix p = pauli_string(pauli_label(i, ch.num_qubits));
        a += ch.epsilons[i] * kron(p, p.conjugate());
    }
    return a;
}

DensityMatrix invert_channel(const PauliChannel& ch, const DensityMatrix& noisy,
                             InversionDiagnostics* diagnostics) {
    require_dim(ch.num_qubits, noisy, "invert_channel");
    const Matrix a = channel_superoperator(ch);
    if (diagnostics != nullptr) {
        const Eigen::JacobiSVD<Matrix> svd(a);
        const RealVector& s = svd.singularValues();
        diagnostics->full_rank = static_cast<std::size_t>(s.size());
        diagnostics->largest_singular = s(0);
        diagnostics->smallest_singular = s(s.size() - 1);
        diagnostics->rcond = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
        diagnostics->rank = static_cast<std::size_t>(
            (s.array() > tol::kPinvRcond * s(0)).count());
    }
    const Vector v = pinv(a) * vec(noisy.matrix());
    return DensityMatrix::raw(hermitian_part(unvec(v, noisy.dim())));
}

DensityMatrix invert_channel(const DepolarizingChannel& ch, const DensityMatrix& noisy) {
    ch.validate();
    require_dim(ch.num_qubits, noisy, "invert_channel");
    if (ch.lambda >= kQdcMaxLambda) {
        throw ValidationError("invert_channel: depolarizing channel with lambda = 1 is not invertible");
    }
    const auto d = static_cast<Eigen::Index>(noisy.dim());
    const Matrix out = (noisy.matrix() - (ch.lambda / static_cast<double>(d)) * Matrix::Identity(d, d)) /
                       (1.0 - ch.lambda);
    return DensityMatrix::raw(hermitian_part(out));
}

PauliFitReport fit_pauli_channel(const std::vector<StatePair>& pairs) {
    if (pairs.empty()) {
        throw ValidationError("fit_pauli_channel: no state pairs");
    }
    const std::size_t d = pairs.front().first.dim();
    if (!is_power_of_two(d)) {
        throw ValidationError("fit_pauli_channel: dimension must be a power of two");
    }
    const std::size_t nq = log2_exact(d);
    const std::size_t np = pauli_count(nq);
    std::vector<Matrix> paulis(np);
    for (std::size_t i = 0; i < np; ++i) {
        paulis[i] = pauli_string(pauli_label(i, nq));
    }

    // Rows: real and imaginary parts of every matrix entry of every pair.
    const auto rows_per = static_cast<Eigen::Index>(2 * d * d);
    const auto n_rows = rows_per * static_cast<Eigen::Index>(pairs.size());
    RMatrix design(n_rows, static_cast<Eigen::Index>(np));
    RealVector target(n_rows);
    Eigen::Index off = 0;
    for (const StatePair& pr : pairs) {
        if (pr.first.dim() != d || pr.second.dim() != d) {
            throw ValidationError("fit_pauli_channel: inconsistent dimensions");
        }
        for (std::size_t i = 0; i < np; ++i) {
            const Vector col = vec(paulis[i] * pr.first.matrix() * paulis[i]);
            design.block(off, static_cast<Eigen::Index>(i), rows_per / 2, 1) = col.real();
            design.block(off + rows_per / 2, static_cast<Eigen::Index>(i), rows_per / 2, 1) = col.imag();
        }
        const Vector y = vec(pr.second.matrix());
        target.segment(off, rows_per / 2) = y.real();
        target.segment(off + rows_per / 2, rows_per / 2) = y.imag();
        off += rows_per;
    }
    const double inv_n = 1.0 / static_cast<double>(pairs.size());
    Quadratic obj;
    obj.q = design.transpose() * design * inv_n;
    obj.b = design.transpose() * target * inv_n;
    obj.c = 0.5 * target.squaredNorm() * inv_n;

    PauliFitReport report;
    RealVector e = RealVector::Zero(static_cast<Eigen::Index>(np));
    e(0) = 1.0;
    double f = obj.value(e);
    report.objective_history.push_back(2.0 * f);

    const double lipschitz = std::max(1e-300, Eigen::SelfAdjointEigenSolver<RMatrix>(obj.q).eigenvalues().maxCoeff());
    for (std::size_t it = 0; it < kMaxFitIterations; ++it) {
        RealVector g = obj.gradient(e);
        report.kkt_residual = projected_gradient_norm(e, g);
        report.iterations = it;
        if (report.kkt_residual < kFitKktTolerance) {
            report.converged = true;
            break;
        }
        // Armijo backtracking along the projection arc.
        double step = 1.0 / lipschitz;
        RealVector trial;
        double ft = f;
        for (int k = 0; k < 60; ++k) {
            trial = project_nonneg(e - step * g);
            ft = obj.value(trial);
            if (ft <= f + 1e-4 * g.dot(trial - e)) {
                break;
            }
            step *= 0.5;
        }
        if (ft <= f) {
            e = trial;
            f = ft;
        }
        // Exact solve on the current face when it stays feasible.
        if (it % 10 == 0) {
            g = obj.gradient(e);
            std::vector<Eigen::Index> free;
            for (Eigen::Index i = 0; i < e.size(); ++i) {
                if (e(i) > 0.0 || g(i) < 0.0) {
                    free.push_back(i);
                }
            }
            if (!free.empty()) {
                const auto nf = static_cast<Eigen::Index>(free.size());
                RMatrix qf(nf, nf);
                RealVector bf(nf);
                for (Eigen::Index a = 0; a < nf; ++a) {
                    bf(a) = obj.b(free[static_cast<std::size_t>(a)]);
                    for (Eigen::Index c = 0; c < nf; ++c) {
                        qf(a, c) = obj.q(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(c)]);
                    }
                }
                const RealVector xf = qf.completeOrthogonalDecomposition().solve(bf);
                if (xf.allFinite() && xf.minCoeff() >= 0.0) {
                    RealVector cand = RealVector::Zero(e.size());
                    for (Eigen::Index a = 0; a < nf; ++a) {
                        cand(free[static_cast<std::size_t>(a)]) = xf(a);
                    }
                    const double fc = obj.value(cand);
                    if (fc <= f) {
                        e = cand;
                        f = fc;
                    }
                }
            }
        }
        report.objective_history.push_back(2.0 * f);
    }

    report.raw_sum = e.sum();
    if (!(report.raw_sum > 0.0)) {
        throw NumericalError("fit_pauli_channel: fitted probabilities vanish");
    }
    report.channel.num_qubits = nq;
    report.channel.epsilons.resize(np);
    for (std::size_t i = 0; i < np; ++i) {
        report.channel.epsilons[i] = e(static_cast<Eigen::Index>(i)) / report.raw_sum;
    }
    return report;
}

namespace {

double lambda_score(const std::vector<StatePair>& pairs, double lambda, LambdaStrategy strategy) {
    double total = 0.0;
    for (const StatePair& pr : pairs) {
        const std::size_t nq = log2_exact(pr.first.dim());
        const DensityMatrix mit = invert_channel(DepolarizingChannel{nq, lambda}, pr.second);
        if (strategy == LambdaStrategy::FidelityMax) {
            total += fidelity(project_physical(mit), pr.first);
        } else {
            total += (mit.matrix() - pr.first.matrix()).squaredNorm();
        }
    }
    return total / static_cast<double>(pairs.size());
}

}  // namespace

LambdaFitReport fit_qdc_lambda_report(const std::vector<StatePair>& pairs, LambdaStrategy strategy) {
    if (pairs.empty()) {
        throw ValidationError("fit_qdc_lambda: no state pairs");
    }
    for (const StatePair& pr : pairs) {
        if (pr.first.dim() != pr.second.dim() || !is_power_of_two(pr.first.dim())) {
            throw ValidationError("fit_qdc_lambda: inconsistent dimensions");
        }
    }
    // Internally always maximize.
    const double sign = strategy == LambdaStrategy::FidelityMax ? 1.0 : -1.0;
    auto score = [&](double l) { return sign * lambda_score(pairs, l, strategy); };

    LambdaFitReport report;
    std::size_t best = 0;
    std::vector<double> values;
    for (std::size_t i = 0; i <= 99; ++i) {
        const double l = 0.01 * static_cast<double>(i);
        values.push_back(score(l));
        report.grid.emplace_back(l, sign * values.back());
        if (values.back() > values[best]) {
            best = i;
        }
    }

    // Golden-section refinement around the best grid point.
    double lo = std::max(0.0, 0.01 * static_cast<double>(best) - 0.01);
    double hi = std::min(0.99, 0.01 * static_cast<double>(best) + 0.01);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = score(x1);
    double f2 = score(x2);
    while (hi - lo > 1e-4) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = score(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = score(x2);
        }
    }
    double best_l = 0.01 * static_cast<double>(best);
    double best_f = values[best];
    for (const auto& [l, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
        if (f > best_f) {
            best_f = f;
            best_l = l;
        }
    }

    // Smallest lambda reaching the optimum: first grid point on the plateau,
    // then bisect back toward the last grid point below it.
    const double plateau = best_f - 1e-10;
    std::size_t first = 0;
    while (first < values.size() && values[first] < plateau) {
        ++first;
    }
    if (first < values.size() && 0.01 * static_cast<double>(first) <= best_l) {
        double right = 0.01 * static_cast<double>(first);
        if (first > 0) {
            double left = right - 0.01;
            while (right - left > 1e-8) {
                const double mid = 0.5 * (left + right);
                if (score(mid) >= plateau) {
                    right = mid;
                } else {
                    left = mid;
                }
            }
        }
        best_l = right;
        best_f = score(best_l);
    }
    report.lambda = best_l;
    report.score = sign * best_f;
    return report;
}

double fit_qdc_lambda(const std::vector<StatePair>& pairs, LambdaStrategy strategy) {
    return fit_qdc_lambda_report(pairs, strategy).lambda;
}

DensityMatrix project_physical(const DensityMatrix& rho) {
    if (!is_hermitian(rho.matrix(), 1e-8)) {
        throw ValidationError("project_physical: input is not Hermitian");
    }
    return DensityMatrix::physical(clip_to_physical(hermitian_part(rho.matrix())), 1e-9);
}

DensityMatrix parity_twirl(const DensityMatrix& rho, const Matrix& parity_op) {
    if (parity_op.rows() != static_cast<Eigen::Index>(rho.dim()) || !is_square(parity_op)) {
        throw ValidationError("parity_twirl: parity operator has the wrong shape");
    }
    const auto d = parity_op.rows();
    const Matrix id = Matrix::Identity(d, d);
    if (!is_hermitian(parity_op) || (parity_op * parity_op - id).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("parity_twirl: parity operator must be a Hermitian involution");
    }
    const Matrix out = hermitian_part(0.5 * (rho.matrix() + parity_op * rho.matrix() * parity_op));
    return rho.is_raw() ? DensityMatrix::raw(out) : DensityMatrix::physical(out, 1e-9);
}

}  // namespace oqsim
