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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "oqsim/circuits.hpp"

namespace oqsim {

namespace {

constexpr double kAngleEps = 1e-15;
constexpr double kUnitaryTol = 1e-10;

std::vector<std::size_t> iota_vec(std::size_t start, std::size_t count) {
    std::vector<std::size_t> v(count);
    std::iota(v.begin(), v.end(), start);
    return v;
}

std::size_t qubits_for(std::size_t dim, const char* what) {
    if (!is_power_of_two(dim)) {
        throw ValidationError(std::string(what) + ": dimension must be a power of two");
    }
    return log2_exact(dim);
}

Gate rotation(GateKind axis, std::size_t q, double angle) {
    return axis == GateKind::Ry ? Gate::ry(q, angle) : Gate::rz(q, angle);
}

bool is_unitary(const Matrix& m) {
    const auto d = m.rows();
    return (m.adjoint() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < kUnitaryTol;
}

struct PauliForm {
    std::string label;
    cplx coefficient;
};

// M = c P for a single Pauli string P and |c| = 1.
std::optional<PauliForm> as_pauli_string(const Matrix& m) {
    const std::size_t n = log2_exact(static_cast<std::size_t>(m.rows()));
    const double d = static_cast<double>(m.rows());
    std::optional<PauliForm> found;
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const std::string label = pauli_label(idx, n);
        const cplx c = (pauli_string(label) * m).trace() / d;
        if (std::abs(c) < 1e-12) {
            continue;
        }
        if (found || std::abs(std::abs(c) - 1.0) > 1e-10) {
            return std::nullopt;
        }
        found = PauliForm{label, c};
    }
    return found;
}

// Emits M on `system` (optionally controlled). Pauli strings become one
// single-qubit gate per non-identity factor; the phase goes on the control.
void append_operator(Circuit& c, const Matrix& m, const std::vector<std::size_t>& system,
                     std::optional<std::size_t> control) {
    if (const auto pf = as_pauli_string(m)) {
        for (std::size_t q = 0; q < pf->label.size(); ++q) {
            Gate g;
            switch (pf->label[q]) {
                case 'X': g = Gate::x(system[q]); break;
                case 'Y': g = Gate::y(system[q]); break;
                case 'Z': g = Gate::z(system[q]); break;
                default: continue;
            }
            if (control) {
                g.controls.push_back({*control, true});
            }
            c.gates.push_back(std::move(g));
        }
        const double phase = std::arg(pf->coefficient);
        if (std::abs(phase) > kAngleEps) {
            if (control) {
                c.gates.push_back(Gate::phase(*control, phase));
            } else {
                c.global_phase += phase;
            }
        }
        return;
    }
    Gate g = Gate::unitary(system, m);
    if (control) {
        g.controls.push_back({*control, true});
    }
    c.gates.push_back(std::move(g));
}

// Walsh-Hadamard transform in place.
void wht(std::vector<double>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

}  // namespace

void append_uniformly_controlled_rotation(Circuit& circuit, GateKind axis,
                                          const std::vector<std::size_t>& controls,
                                          std::size_t target, const std::vector<double>& angles) {
    if (axis != GateKind::Ry && axis != GateKind::Rz) {
        throw ValidationError("uniformly controlled rotation: axis must be Ry or Rz");
    }
    const std::size_t k = controls.size();
    if (angles.size() != (std::size_t{1} << k)) {
        throw ValidationError("uniformly controlled rotation: need 2^k angles");
    }
    const bool uniform = std::all_of(angles.begin(), angles.end(), [&](double a) {
        return std::abs(a - angles.front()) <= kAngleEps;
    });
    if (uniform) {
        if (std::abs(angles.front()) > kAngleEps) {
            circuit.gates.push_back(rotation(axis, target, angles.front()));
        }
        return;
    }
    // angles[x] = sum_g (-1)^{g.x} beta_g, so beta = WHT(angles) / 2^k.
    std::vector<double> beta = angles;
    wht(beta);
    const double scale = 1.0 / static_cast<double>(angles.size());
    for (double& b : beta) {
        b *= scale;
    }
    const std::size_t count = angles.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double b = beta[gray(i)];
        if (std::abs(b) > kAngleEps) {
            circuit.gates.push_back(rotation(axis, target, b));
        }
        const std::size_t flip = gray(i) ^ gray((i + 1) % count);
        const auto bit = static_cast<std::size_t>(std::countr_zero(flip));
        circuit.gates.push_back(Gate::cnot(controls[k - 1 - bit], target));
    }
}

Circuit encode_diagonal_unitary(const RealVector& phases, DiagonalScheme scheme) {
    const auto d = static_cast<std::size_t>(phases.size());
    const std::size_t n = qubits_for(d, "encode_diagonal_unitary");
    if (!phases.allFinite()) {
        throw ValidationError("encode_diagonal_unitary: non-finite phase");
    }
    Circuit c;
    c.num_system_qubits = n;

    if (scheme == DiagonalScheme::Binary) {
        // phi(x) = sum_S c_S prod_{j in S} x_j; one controlled phase per c_S != 0.
        std::vector<double> coeff(phases.data(), phases.data() + d);
        for (std::size_t bit = 1; bit < d; bit <<= 1) {
            for (std::size_t s = 0; s < d; ++s) {
                if (s & bit) {
                    coeff[s] -= coeff[s ^ bit];
                }
            }
        }
        c.global_phase = coeff[0];
        for (std::size_t s = 1; s < d; ++s) {
            if (std::abs(coeff[s]) <= kAngleEps) {
                continue;
            }
            std::vector<std::size_t> qs;
            for (std::size_t q = 0; q < n; ++q) {
                if (s & (std::size_t{1} << (n - 1 - q))) {
                    qs.push_back(q);
                }
            }
            Gate g = Gate::phase(qs.back(), coeff[s]);
            for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
                g.controls.push_back({qs[i], true});
            }
            c.gates.push_back(std::move(g));
        }
        return c;
    }

    // Gray: peel off the least significant qubit as a uniformly controlled Rz.
    std::vector<double> p(phases.data(), phases.data() + d);
    for (std::size_t k = n; k >= 1; --k) {
        const std::size_t half = p.size() / 2;
        std::vector<double> angles(half);
        std::vector<double> rest(half);
        for (std::size_t x = 0; x < half; ++x) {
            angles[x] = p[2 * x + 1] - p[2 * x];
            rest[x] = 0.5 * (p[2 * x] + p[2 * x + 1]);
        }
        append_uniformly_controlled_rotation(c, GateKind::Rz, iota_vec(0, k - 1), k - 1, angles);
        p = std::move(rest);
    }
    c.global_phase = p.front();
    return c;
}

Circuit encode_diagonal_contraction(const RealVector& decays) {
    const auto d = static_cast<std::size_t>(decays.size());
    const std::size_t n = qubits_for(d, "encode_diagonal_contraction");
    std::vector<double> angles(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double v = decays(static_cast<Eigen::Index>(i));
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
            throw ValidationError("encode_diagonal_contraction: entries must lie in [0, 1]");
        }
        angles[i] = 2.0 * std::acos(std::clamp(v, 0.0, 1.0));
    }
    Circuit c;
    c.num_system_qubits = n;
    c.num_ancilla_qubits = 1;
    append_uniformly_controlled_rotation(c, GateKind::Ry, iota_vec(0, n), n, angles);
    c.postselect = {n};
    return c;
}

Circuit prepare_distribution(const std::vector<double>& amplitudes) {
    const std::size_t d = amplitudes.size();
    const std::size_t n = qubits_for(d, "prepare_distribution");
    double norm2 = 0.0;
    for (double a : amplitudes) {
        if (!(a >= 0.0)) {
            throw ValidationError("prepare_distribution: amplitudes must be non-negative");
        }
        norm2 += a * a;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw ValidationError("prepare_distribution: amplitudes must have unit norm");
    }
    Circuit c;
    c.num_system_qubits = n;
    for (std::size_t level = 0; level < n; ++level) {
        const std::size_t block = d >> level;
        const std::size_t prefixes = std::size_t{1} << level;
        std::vector<double> angles(prefixes);
        for (std::size_t pre = 0; pre < prefixes; ++pre) {
            double left = 0.0;
            double right = 0.0;
            for (std::size_t i = 0; i < block / 2; ++i) {
                left += std::pow(amplitudes[pre * block + i], 2);
                right += std::pow(amplitudes[pre * block + block / 2 + i], 2);
            }
            angles[pre] = 2.0 * std::atan2(std::sqrt(right), std::sqrt(left));
        }
        append_uniformly_controlled_rotation(c, GateKind::Ry, iota_vec(0, level), level, angles);
    }
    return c;
}

Circuit build_kraus_circuit(const KrausTerm& term, const LindbladModel& model, double t,
                            const KrausCircuitOptions& options) {
    model.validate();
    const std::size_t n = qubits_for(model.dim(), "build_kraus_circuit");
    const std::size_t m = term.indices.size();
    if (m + 1 > options.max_ancillas) {
        throw ValidationError("build_kraus_circuit: term order " + std::to_string(m) +
                              " exceeds the ancilla budget");
    }
    const EffectiveEvolution ev(model);
    if (!ev.diagonalizable()) {
        throw NumericalError("build_kraus_circuit: effective Hamiltonian has no joint eigenbasis");
    }

    Circuit c;
    c.num_system_qubits = n;
    c.num_ancilla_qubits = m + 1;
    const std::vector<std::size_t> system = iota_vec(0, n);

    // Rightmost factor first, each on a fresh ancilla.
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = term.indices[m - 1 - j];
        if (k >= model.num_lindblads()) {
            throw ValidationError("build_kraus_circuit: Lindblad index out of range");
        }
        const Matrix& l = model.lindblads[k];
        if (is_unitary(l)) {
            append_operator(c, l, system, std::nullopt);
            continue;
        }
        std::vector<std::size_t> targets{n + j};
        targets.insert(targets.end(), system.begin(), system.end());
        c.gates.push_back(Gate::unitary(targets, sznagy_dilation(l)));
    }

    // T(t) = U W(t) Lambda(t) U^+.
    if (!ev.computational_basis()) {
        c.gates.push_back(Gate::unitary(system, ev.basis().adjoint()));
    }
    std::vector<std::size_t> with_lambda = system;
    with_lambda.push_back(n + m);
    c.compose(encode_diagonal_contraction(ev.contraction(t)), with_lambda);
    c.compose(encode_diagonal_unitary(ev.phases(t), options.scheme), system);
    if (!ev.computational_basis()) {
        c.gates.push_back(Gate::unitary(system, ev.basis()));
    }
    c.postselect = iota_vec(n, m + 1);
    c.validate();
    return c;
}

Circuit build_group_circuit(const LindbladModel& model, double t) {
    const FactoredEvolution fe = build_factored_evolution(model, t);
    const std::size_t n = qubits_for(model.dim(), "build_group_circuit");
    const std::size_t n_ops = model.num_lindblads();

    std::vector<std::size_t> reg_sizes(n_ops);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n_ops; ++i) {
        if (!is_unitary(fe.rescaled_lindblads[i])) {
            throw ValidationError("build_group_circuit: rescaled Lindblad operator is not unitary");
        }
        std::size_t r = 0;
        while ((std::size_t{1} << r) < fe.register_dims[i]) {
            ++r;
        }
        reg_sizes[i] = r;
        total += r;
    }

    Circuit c;
    c.num_system_qubits = n;
    c.num_ancilla_qubits = total;
    const std::vector<std::size_t> system = iota_vec(0, n);

    std::vector<std::size_t> reg_start(n_ops);
    std::size_t next = n;
    for (std::size_t i = 0; i < n_ops; ++i) {
        reg_start[i] = next;
        next += reg_sizes[i];
        if (reg_sizes[i] == 0) {
            continue;
        }
        std::vector<double> amp = hyperbolic_distribution(fe.register_dims[i], fe.rescaled_gammas[i], t);
        amp.resize(std::size_t{1} << reg_sizes[i], 0.0);
        c.compose(prepare_distribution(amp), iota_vec(reg_start[i], reg_sizes[i]));
    }

    // Last operator first so the product reads L'_1^{m_1} ... L'_N^{m_N}.
    for (std::size_t i = n_ops; i-- > 0;) {
        Matrix power = fe.rescaled_lindblads[i];
        for (std::size_t j = 0; j < reg_sizes[i]; ++j) {
            const std::size_t control = reg_start[i] + reg_sizes[i] - 1 - j;
            append_operator(c, power, system, control);
            power = power * power;
        }
    }

    const Matrix tt = EffectiveEvolution(model).at(t);
    double gamma_prime = 0.0;
    for (double g : fe.rescaled_gammas) {
        gamma_prime += g;
    }
    const Matrix v = std::exp(0.5 * gamma_prime * t) * tt;
    if (!is_unitary(v)) {
        throw NumericalError("build_group_circuit: rescaled effective evolution is not unitary");
    }
    const cplx v00 = v(0, 0);
    if ((v - v00 * Matrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff() < 1e-13) {
        c.global_phase += std::arg(v00);
    } else {
        c.gates.push_back(Gate::unitary(system, v));
    }
    c.validate();
    return c;
}

}  // namespace oqsim
