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

#include "oqsim/analysis.hpp"

#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oqsim {

namespace {

void require_physical(const DensityMatrix& rho, const char* what) {
    if (rho.is_raw() && !rho.satisfies_physical(1e-9)) {
        throw ValidationError(std::string(what) + ": state is not physical; project it first");
    }
}

// i^k for integer k.
cplx i_power(long k) {
    static const cplx kTable[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kTable[((k % 4) + 4) % 4];
}

// Factor multiplying rho(n, n') psi_n psi_n' in the chosen representation.
cplx representation_phase(DensityKind which, std::size_t n, std::size_t np) {
    if (which == DensityKind::Position) {
        return {1.0, 0.0};
    }
    return i_power(static_cast<long>(np) - static_cast<long>(n));
}

const RealVector& axis_of(const PhaseSpaceGrid& grid, DensityKind which) {
    return which == DensityKind::Position ? grid.x : grid.p;
}

struct OscillatorResidual {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    const std::vector<double>& t;
    const std::vector<double>& x;
    const std::vector<double>& p;

    int inputs() const { return 4; }
    int values() const { return static_cast<int>(2 * t.size()); }

    // params = (A, w, k, phi)
    int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& f) const {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double env = q(0) * std::exp(-q(2) * t[i]);
            const double arg = q(1) * t[i] + q(3);
            f(static_cast<Eigen::Index>(2 * i)) = env * std::cos(arg) - x[i];
            f(static_cast<Eigen::Index>(2 * i + 1)) = -env * std::sin(arg) - p[i];
        }
        return 0;
    }

    int df(const Eigen::VectorXd& q, Eigen::MatrixXd& j) const {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double e = std::exp(-q(2) * t[i]);
            const double env = q(0) * e;
            const double arg = q(1) * t[i] + q(3);
            const double c = std::cos(arg);
            const double s = std::sin(arg);
            const auto r = static_cast<Eigen::Index>(2 * i);
            j(r, 0) = e * c;
            j(r, 1) = -env * s * t[i];
            j(r, 2) = -t[i] * env * c;
            j(r, 3) = -env * s;
            j(r + 1, 0) = -e * s;
            j(r + 1, 1) = -env * c * t[i];
            j(r + 1, 2) = t[i] * env * s;
            j(r + 1, 3) = -env * c;
        }
        return 0;
    }
};

// Ordinary least-squares slope and intercept.
std::pair<double, double> linear_fit(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double den = n * stt - st * st;
    if (std::abs(den) < 1e-300) {
        return {0.0, sy / n};
    }
    const double slope = (n * sty - st * sy) / den;
    return {slope, (sy - slope * st) / n};
}

double wrap_phase(double phi) {
    double w = std::remainder(phi, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) {
        w += 2.0 * std::numbers::pi;
    }
    return w;
}

}  // namespace

PhaseSpaceGrid PhaseSpaceGrid::uniform(double half_width, double step) {
    if (!(half_width > 0.0) || !(step > 0.0)) {
        throw ValidationError("PhaseSpaceGrid: width and step must be positive");
    }
    const auto n = static_cast<Eigen::Index>(std::llround(2.0 * half_width / step)) + 1;
    PhaseSpaceGrid g;
    g.x = RealVector::LinSpaced(n, -half_width, half_width);
    g.p = g.x;
    return g;
}

PhaseSpaceGrid PhaseSpaceGrid::standard() { return uniform(5.0, 0.05); }

double PhaseSpaceGrid::dx() const { return x.size() > 1 ? x(1) - x(0) : 0.0; }
double PhaseSpaceGrid::dp() const { return p.size() > 1 ? p(1) - p(0) : 0.0; }

void PhaseSpaceGrid::validate() const {
    for (const RealVector* axis : {&x, &p}) {
        if (axis->size() < 2) {
            throw ValidationError("PhaseSpaceGrid: each axis needs at least two points");
        }
        for (Eigen::Index i = 1; i < axis->size(); ++i) {
            if (!((*axis)(i) > (*axis)(i - 1))) {
                throw ValidationError("PhaseSpaceGrid: axes must be strictly increasing");
            }
        }
    }
}

std::vector<Quadrature> quadrature_expectations(const DensityMatrix& rho,
                                                const std::vector<Matrix>& mode_ops) {
    std::vector<Quadrature> out;
    for (const Matrix& a : mode_ops) {
        if (a.rows() != static_cast<Eigen::Index>(rho.dim()) || a.cols() != a.rows()) {
            throw ValidationError("quadrature_expectations: dimension mismatch");
        }
        const Matrix x0 = (a.adjoint() + a) / std::numbers::sqrt2;
        const Matrix p0 = kI * (a.adjoint() - a) / std::numbers::sqrt2;
        out.push_back({(rho.matrix() * x0).trace().real(), (rho.matrix() * p0).trace().real()});
    }
    return out;
}

RealVector hermite_functions(std::size_t n_max, double x) {
    RealVector psi(static_cast<Eigen::Index>(n_max + 1));
    psi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max >= 1) {
        psi(1) = std::numbers::sqrt2 * x * psi(0);
    }
    for (std::size_t n = 1; n < n_max; ++n) {
        const double nn = static_cast<double>(n);
        psi(static_cast<Eigen::Index>(n + 1)) =
            std::sqrt(2.0 / (nn + 1.0)) * x * psi(static_cast<Eigen::Index>(n)) -
            std::sqrt(nn / (nn + 1.0)) * psi(static_cast<Eigen::Index>(n - 1));
    }
    return psi;
}

double laguerre(std::size_t n, double k, double x) {
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 1.0 + k - x;
    for (std::size_t j = 1; j < n; ++j) {
        const double jj = static_cast<double>(j);
        const double next = ((2.0 * jj + 1.0 + k - x) * cur - (jj + k) * prev) / (jj + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

RealVector position_density(const DensityMatrix& rho, const PhaseSpaceGrid& grid, DensityKind which) {
    require_physical(rho, "position_density");
    grid.validate();
    const RealVector& axis = axis_of(grid, which);
    const std::size_t d = rho.dim();
    RealVector out(axis.size());
    for (Eigen::Index g = 0; g < axis.size(); ++g) {
        const RealVector psi = hermite_functions(d - 1, axis(g));
        cplx s{0.0, 0.0};
        for (std::size_t n = 0; n < d; ++n) {
            for (std::size_t m = 0; m < d; ++m) {
                s += rho(n, m) * representation_phase(which, n, m) *
                     psi(static_cast<Eigen::Index>(n)) * psi(static_cast<Eigen::Index>(m));
            }
        }
        out(g) = s.real();
    }
    return out;
}

Field joint_density(const DensityMatrix& rho, std::size_t levels_per_mode, const PhaseSpaceGrid& grid,
                    DensityKind which) {
    require_physical(rho, "joint_density");
    grid.validate();
    if (levels_per_mode * levels_per_mode != rho.dim()) {
        throw ValidationError("joint_density: state dimension does not match two modes");
    }
    const RealVector& axis = axis_of(grid, which);
    const std::size_t l = levels_per_mode;
    std::vector<RealVector> psi(static_cast<std::size_t>(axis.size()));
    for (Eigen::Index g = 0; g < axis.size(); ++g) {
        psi[static_cast<std::size_t>(g)] = hermite_functions(l - 1, axis(g));
    }
    Field out(axis.size(), axis.size());
    for (Eigen::Index g1 = 0; g1 < axis.size(); ++g1) {
        const RealVector& u = psi[static_cast<std::size_t>(g1)];
        for (Eigen::Index g2 = 0; g2 < axis.size(); ++g2) {
            const RealVector& v = psi[static_cast<std::size_t>(g2)];
            cplx s{0.0, 0.0};
            for (std::size_t a = 0; a < rho.dim(); ++a) {
                const std::size_t n1 = a / l;
                const std::size_t n2 = a % l;
                for (std::size_t b = 0; b < rho.dim(); ++b) {
                    const std::size_t m1 = b / l;
                    const std::size_t m2 = b % l;
                    s += rho(a, b) * representation_phase(which, n1, m1) *
                         representation_phase(which, n2, m2) *
                         u(static_cast<Eigen::Index>(n1)) * u(static_cast<Eigen::Index>(m1)) *
                         v(static_cast<Eigen::Index>(n2)) * v(static_cast<Eigen::Index>(m2));
                }
            }
            out(g1, g2) = s.real();
        }
    }
    return out;
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
    const std::size_t d = rho.dim();
    const double r2 = x * x + p * p;
    const cplx z = std::numbers::sqrt2 * cplx{x, p};
    double sum = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        cplx zk{1.0, 0.0};
        double ratio = 1.0;  // n! / n'!
        for (std::size_t np = n; np < d; ++np) {
            if (np > n) {
                zk *= z;
                ratio /= static_cast<double>(np);
            }
            const std::size_t k = np - n;
            const double c = ((n % 2 == 0) ? 1.0 : -1.0) * (k == 0 ? 1.0 : 2.0) * std::sqrt(ratio);
            sum += c * (rho(n, np) * zk).real() * laguerre(n, static_cast<double>(k), 2.0 * r2);
        }
    }
    return std::exp(-r2) / std::numbers::pi * sum;
}

Field wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid, std::size_t num_modes) {
    if (num_modes != 1) {
        throw ValidationError("wigner: only single-mode states are supported");
    }
    require_physical(rho, "wigner");
    grid.validate();
    Field out(grid.x.size(), grid.p.size());
    for (Eigen::Index i = 0; i < grid.x.size(); ++i) {
        for (Eigen::Index j = 0; j < grid.p.size(); ++j) {
            out(i, j) = wigner_at(rho, grid.x(i), grid.p(j));
        }
    }
    return out;
}

double integrate(const RealVector& values, double step) {
    if (values.size() < 2) {
        return 0.0;
    }
    return step * (values.sum() - 0.5 * (values(0) + values(values.size() - 1)));
}

double integrate(const Field& values, double dx, double dp) {
    RealVector rows(values.rows());
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        rows(i) = integrate(RealVector(values.row(i).transpose()), dp);
    }
    return integrate(rows, dx);
}

OscillatorFit fit_damped_oscillator(const std::vector<double>& times, const std::vector<double>& x,
                                    const std::vector<double>& p) {
    if (times.size() != x.size() || times.size() != p.size()) {
        throw ValidationError("fit_damped_oscillator: sample vectors differ in length");
    }
    if (times.size() < 4) {
        throw ValidationError("fit_damped_oscillator: need at least 4 samples");
    }
    double max_abs = 0.0;
    bool constant = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        max_abs = std::max({max_abs, std::abs(x[i]), std::abs(p[i])});
        constant = constant && x[i] == x[0] && p[i] == p[0];
    }
    if (max_abs == 0.0) {
        return {};
    }
    if (constant) {
        throw ValidationError("fit_damped_oscillator: constant input");
    }

    // Seeds from z = x - ip = A e^{-k t} e^{i(w t + phi)}.
    std::vector<double> ts;
    std::vector<double> phase;
    std::vector<double> logmag;
    double last = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const cplx z{x[i], -p[i]};
        if (std::abs(z) < 1e-14 * max_abs) {
            continue;
        }
        double a = std::arg(z);
        if (!first) {
            a += 2.0 * std::numbers::pi * std::round((last - a) / (2.0 * std::numbers::pi));
        }
        first = false;
        last = a;
        ts.push_back(times[i]);
        phase.push_back(a);
        logmag.push_back(std::log(std::abs(z)));
    }
    const auto [w0, phi0] = linear_fit(ts, phase);
    const auto [mk, lna] = linear_fit(ts, logmag);

    OscillatorResidual functor{times, x, p};
    OscillatorFit best;
    double best_norm = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 8; ++s) {
        Eigen::VectorXd q(4);
        q << std::exp(lna), w0, -mk, phi0 + 2.0 * std::numbers::pi * s / 8.0;
        Eigen::LevenbergMarquardt<OscillatorResidual> lm(functor);
        lm.parameters.xtol = 1e-15;
        lm.parameters.ftol = 1e-15;
        lm.parameters.maxfev = 4000;
        lm.minimize(q);
        Eigen::VectorXd f(functor.values());
        functor(q, f);
        const double norm = f.squaredNorm();
        if (q.allFinite() && norm < best_norm) {
            best_norm = norm;
            best.amplitude = q(0);
            best.frequency = q(1);
            best.damping = q(2);
            best.phase = q(3);
        }
    }
    if (best.amplitude < 0.0) {
        best.amplitude = -best.amplitude;
        best.phase += std::numbers::pi;
    }
    best.phase = wrap_phase(best.phase);
    best.residual = std::sqrt(best_norm / static_cast<double>(2 * times.size()));
    return best;
}

}  // namespace oqsim
