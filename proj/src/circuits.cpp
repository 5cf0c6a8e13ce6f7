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

#include "oqsim/circuits.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace oqsim {

namespace {

constexpr double kDilationNormSlack = 1e-10;

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

std::size_t bit_of(std::size_t index, std::size_t qubit, std::size_t n) {
    return (index >> (n - 1 - qubit)) & 1U;
}

std::size_t mask_of(std::size_t qubit, std::size_t n) {
    return std::size_t{1} << (n - 1 - qubit);
}

void apply_gate(Vector& psi, const Gate& gate, std::size_t n) {
    const Matrix m = gate.target_matrix();
    const std::size_t k = gate.targets.size();
    const std::size_t sub = std::size_t{1} << k;
    std::size_t target_mask = 0;
    for (std::size_t q : gate.targets) {
        target_mask |= mask_of(q, n);
    }
    std::vector<std::size_t> offsets(sub, 0);
    for (std::size_t s = 0; s < sub; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((s >> (k - 1 - j)) & 1U) {
                offsets[s] |= mask_of(gate.targets[j], n);
            }
        }
    }
    Vector in(static_cast<Eigen::Index>(sub));
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base & target_mask) != 0) {
            continue;
        }
        bool fire = true;
        for (const Control& c : gate.controls) {
            if ((bit_of(base, c.qubit, n) == 1U) != c.value) {
                fire = false;
                break;
            }
        }
        if (!fire) {
            continue;
        }
        for (std::size_t s = 0; s < sub; ++s) {
            in(static_cast<Eigen::Index>(s)) = psi(static_cast<Eigen::Index>(base | offsets[s]));
        }
        const Vector out = m * in;
        for (std::size_t s = 0; s < sub; ++s) {
            psi(static_cast<Eigen::Index>(base | offsets[s])) = out(static_cast<Eigen::Index>(s));
        }
    }
}

void check_basis(std::string_view basis, std::size_t num_qubits) {
    if (basis.size() != num_qubits) {
        throw ValidationError("measurement basis length does not match the qubit count");
    }
    for (char c : basis) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ValidationError(std::string("invalid measurement basis character '") + c + "'");
        }
    }
}

// Rotation into the computational basis for each system qubit.
Circuit basis_rotation(std::string_view basis, std::size_t num_qubits) {
    Circuit c;
    c.num_system_qubits = num_qubits;
    for (std::size_t q = 0; q < basis.size(); ++q) {
        if (basis[q] == 'X') {
            c.gates.push_back(Gate::h(q));
        } else if (basis[q] == 'Y') {
            c.gates.push_back(Gate::phase(q, -std::numbers::pi / 2.0));
            c.gates.push_back(Gate::h(q));
        }
    }
    return c;
}

std::string bitstring(std::size_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if (bit_of(index, q, width) == 1U) {
            s[q] = '1';
        }
    }
    return s;
}

// Outcome probabilities over the full register, ordered by basis index.
std::vector<double> probabilities_of(const Vector& psi) {
    std::vector<double> p(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(psi(i));
    }
    return p;
}

struct Layout {
    std::size_t num_qubits;
    std::size_t num_system;
    std::size_t select_mask;
};

// Maps a full-register index to the system bitstring, or nullopt if rejected.
std::optional<std::string> system_outcome(std::size_t index, const Layout& layout) {
    if ((index & layout.select_mask) != 0) {
        return std::nullopt;
    }
    const std::size_t shift = layout.num_qubits - layout.num_system;
    return bitstring(index >> shift, layout.num_system);
}

ShotResult sample_probs(const std::vector<double>& p, const Layout& layout, std::string_view basis,
                        std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ValidationError("sample_shots: shots must be at least 1");
    }
    ShotResult r;
    r.basis = std::string(basis);
    r.shots = shots;
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    std::uint64_t accepted = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const std::size_t idx = dist(rng);
        if (auto key = system_outcome(idx, layout)) {
            ++r.counts[*key];
            ++accepted;
        }
    }
    r.accepted_fraction = static_cast<double>(accepted) / static_cast<double>(shots);
    return r;
}

ShotResult exact_probs(const std::vector<double>& p, const Layout& layout, std::string_view basis) {
    ShotResult r;
    r.basis = std::string(basis);
    r.exact = true;
    double kept = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (auto key = system_outcome(i, layout)) {
            r.probabilities[*key] += p[i];
            kept += p[i];
        }
    }
    r.accepted_fraction = std::clamp(kept, 0.0, 1.0);
    if (kept > 0.0) {
        for (auto& [key, value] : r.probabilities) {
            value /= kept;
        }
    }
    return r;
}

Vector rotated_register(const Vector& psi, std::string_view basis, std::size_t num_qubits,
                        std::size_t num_system) {
    check_basis(basis, num_system);
    Circuit rot = basis_rotation(basis, num_system);
    Vector out = psi;
    for (const Gate& g : rot.gates) {
        apply_gate(out, g, num_qubits);
    }
    return out;
}

std::vector<double> rotated_diagonal(const DensityMatrix& rho, std::string_view basis) {
    const std::size_t n = log2_exact(rho.dim());
    check_basis(basis, n);
    const Circuit rot = basis_rotation(basis, n);
    const Matrix u = circuit_unitary(rot);
    const Matrix r = u * rho.matrix() * u.adjoint();
    std::vector<double> p(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        p[i] = std::max(0.0, r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
    }
    return p;
}

Layout layout_of(const Circuit& c) {
    std::size_t mask = 0;
    for (std::size_t q : c.postselect) {
        mask |= mask_of(q, c.num_qubits());
    }
    return {c.num_qubits(), c.num_system_qubits, mask};
}

}  // namespace

Matrix Gate::target_matrix() const {
    const double a = angle;
    switch (kind) {
        case GateKind::X:
        case GateKind::CNOT:
            return mat2(0, 1, 1, 0);
        case GateKind::Y:
            return mat2(0, -kI, kI, 0);
        case GateKind::Z:
            return mat2(1, 0, 0, -1);
        case GateKind::H: {
            const double s = 1.0 / std::numbers::sqrt2;
            return mat2(s, s, s, -s);
        }
        case GateKind::Phase:
            return mat2(1, 0, 0, std::polar(1.0, a));
        case GateKind::Rz:
            return mat2(std::polar(1.0, -a / 2.0), 0, 0, std::polar(1.0, a / 2.0));
        case GateKind::Ry:
            return mat2(std::cos(a / 2.0), -std::sin(a / 2.0), std::sin(a / 2.0), std::cos(a / 2.0));
        case GateKind::Unitary:
            return matrix;
    }
    throw ValidationError("Gate: unknown kind");
}

Gate Gate::x(std::size_t q) { return {GateKind::X, {q}, {}, 0.0, {}}; }
Gate Gate::y(std::size_t q) { return {GateKind::Y, {q}, {}, 0.0, {}}; }
Gate Gate::z(std::size_t q) { return {GateKind::Z, {q}, {}, 0.0, {}}; }
Gate Gate::h(std::size_t q) { return {GateKind::H, {q}, {}, 0.0, {}}; }
Gate Gate::phase(std::size_t q, double angle) { return {GateKind::Phase, {q}, {}, angle, {}}; }
Gate Gate::rz(std::size_t q, double angle) { return {GateKind::Rz, {q}, {}, angle, {}}; }
Gate Gate::ry(std::size_t q, double angle) { return {GateKind::Ry, {q}, {}, angle, {}}; }
Gate Gate::cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, {target}, {{control, true}}, 0.0, {}};
}
Gate Gate::unitary(std::vector<std::size_t> targets, Matrix m) {
    return {GateKind::Unitary, std::move(targets), {}, 0.0, std::move(m)};
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::H: return "h";
        case GateKind::Phase: return "phase";
        case GateKind::Rz: return "rz";
        case GateKind::Ry: return "ry";
        case GateKind::CNOT: return "cnot";
        case GateKind::Unitary: return "unitary";
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    static const std::pair<std::string_view, GateKind> kTable[] = {
        {"x", GateKind::X},         {"y", GateKind::Y},   {"z", GateKind::Z},
        {"h", GateKind::H},         {"phase", GateKind::Phase}, {"rz", GateKind::Rz},
        {"ry", GateKind::Ry},       {"cnot", GateKind::CNOT}, {"unitary", GateKind::Unitary},
    };
    for (const auto& [key, kind] : kTable) {
        if (key == name) {
            return kind;
        }
    }
    throw ValidationError("unknown gate kind '" + std::string(name) + "'");
}

void Circuit::validate() const {
    const std::size_t n = num_qubits();
    for (const Gate& g : gates) {
        std::set<std::size_t> seen;
        for (std::size_t q : g.targets) {
            if (q >= n || !seen.insert(q).second) {
                throw ValidationError("Circuit: invalid target qubit " + std::to_string(q));
            }
        }
        for (const Control& c : g.controls) {
            if (c.qubit >= n || !seen.insert(c.qubit).second) {
                throw ValidationError("Circuit: invalid control qubit " + std::to_string(c.qubit));
            }
        }
        if (g.targets.empty()) {
            throw ValidationError("Circuit: gate without targets");
        }
        if (!std::isfinite(g.angle)) {
            throw ValidationError("Circuit: non-finite gate angle");
        }
        if (g.kind == GateKind::Unitary) {
            const auto dim = static_cast<Eigen::Index>(std::size_t{1} << g.targets.size());
            if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
                throw ValidationError("Circuit: unitary gate has the wrong size");
            }
        } else if (g.targets.size() != 1) {
            throw ValidationError("Circuit: elementary gates act on one target");
        }
    }
    for (std::size_t q : postselect) {
        if (q >= n) {
            throw ValidationError("Circuit: post-selected qubit out of range");
        }
    }
}

void Circuit::compose(const Circuit& sub, const std::vector<std::size_t>& qubit_map) {
    if (qubit_map.size() < sub.num_qubits()) {
        throw ValidationError("Circuit::compose: qubit map is too short");
    }
    for (Gate g : sub.gates) {
        for (std::size_t& q : g.targets) {
            q = qubit_map.at(q);
        }
        for (Control& c : g.controls) {
            c.qubit = qubit_map.at(c.qubit);
        }
        gates.push_back(std::move(g));
    }
    for (std::size_t q : sub.postselect) {
        postselect.push_back(qubit_map.at(q));
    }
    global_phase += sub.global_phase;
}

std::size_t Circuit::multi_qubit_gate_count() const {
    return static_cast<std::size_t>(std::count_if(
        gates.begin(), gates.end(), [](const Gate& g) { return g.arity() >= 2; }));
}

std::map<std::string, double> ShotResult::distribution() const {
    if (exact) {
        return probabilities;
    }
    std::map<std::string, double> out;
    std::uint64_t total = 0;
    for (const auto& [key, n] : counts) {
        total += n;
    }
    if (total == 0) {
        return out;
    }
    for (const auto& [key, n] : counts) {
        out[key] = static_cast<double>(n) / static_cast<double>(total);
    }
    return out;
}

Matrix sznagy_dilation(const Matrix& l) {
    if (!is_square(l) || l.rows() == 0) {
        throw ValidationError("sznagy_dilation: operator must be square");
    }
    const double norm = spectral_norm(l);
    if (norm > 1.0 + kDilationNormSlack) {
        throw ValidationError("sznagy_dilation: operator norm exceeds 1; normalize first");
    }
    // Both defect operators from one SVD L = W S V^+:
    // sqrt(I - LL^+) = W sqrt(1 - S^2) W^+ and sqrt(I - L^+L) = V sqrt(1 - S^2) V^+.
    // Separate eigensolves of the two defects put rounding-level null
    // eigenvalues through the square root and cost ~1e-9 in unitarity.
    const auto d = l.rows();
    const Eigen::JacobiSVD<Matrix> svd(l, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector defect(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double s = std::min(svd.singularValues()(i), 1.0);
        defect(i) = std::sqrt((1.0 - s) * (1.0 + s));
    }
    const Matrix& w = svd.matrixU();
    const Matrix& v = svd.matrixV();
    Matrix u(2 * d, 2 * d);
    u.topLeftCorner(d, d) = l;
    u.topRightCorner(d, d) = w * defect.asDiagonal() * w.adjoint();
    u.bottomLeftCorner(d, d) = v * defect.asDiagonal() * v.adjoint();
    u.bottomRightCorner(d, d) = -l.adjoint();
    return u;
}

QuantumState with_ancillas(const QuantumState& system, const Circuit& circuit) {
    if (system.dim() != (std::size_t{1} << circuit.num_system_qubits)) {
        throw ValidationError("with_ancillas: state dimension does not match the circuit");
    }
    const std::size_t a = std::size_t{1} << circuit.num_ancilla_qubits;
    Vector full = Vector::Zero(static_cast<Eigen::Index>(system.dim() * a));
    for (std::size_t i = 0; i < system.dim(); ++i) {
        full(static_cast<Eigen::Index>(i * a)) = system[i];
    }
    return QuantumState(full);
}

QuantumState simulate_statevector(const Circuit& circuit, const QuantumState& input) {
    const std::size_t n = circuit.num_qubits();
    if (input.dim() != (std::size_t{1} << n)) {
        throw ValidationError("simulate_statevector: state dimension does not match the circuit");
    }
    circuit.validate();
    Vector psi = input.amplitudes();
    for (const Gate& g : circuit.gates) {
        apply_gate(psi, g, n);
    }
    if (circuit.global_phase != 0.0) {
        psi *= std::polar(1.0, circuit.global_phase);
    }
    return QuantumState::normalized(psi);
}

Matrix circuit_unitary(const Circuit& circuit) {
    circuit.validate();
    const std::size_t n = circuit.num_qubits();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix u = Matrix::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Vector col = u.col(c);
        for (const Gate& g : circuit.gates) {
            apply_gate(col, g, n);
        }
        u.col(c) = col * std::polar(1.0, circuit.global_phase);
    }
    return u;
}

PostselectResult postselect(const QuantumState& state, const std::vector<std::size_t>& qubits) {
    const std::size_t n = log2_exact(state.dim());
    std::size_t mask = 0;
    for (std::size_t q : qubits) {
        if (q >= n) {
            throw ValidationError("postselect: qubit index out of range");
        }
        mask |= mask_of(q, n);
    }
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < n; ++q) {
        if ((mask & mask_of(q, n)) == 0) {
            keep.push_back(q);
        }
    }
    const std::size_t kept_dim = std::size_t{1} << keep.size();
    Vector out = Vector::Zero(static_cast<Eigen::Index>(kept_dim));
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) != 0) {
            continue;
        }
        std::size_t j = 0;
        for (std::size_t q : keep) {
            j = (j << 1) | bit_of(i, q, n);
        }
        out(static_cast<Eigen::Index>(j)) = state[i];
    }
    PostselectResult r;
    r.probability = out.squaredNorm();
    if (r.probability > 0.0) {
        r.state = QuantumState::normalized(out);
    }
    return r;
}

DensityMatrix reduced_density_matrix(const QuantumState& state, const std::vector<std::size_t>& keep) {
    const std::size_t n = log2_exact(state.dim());
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            rest.push_back(q);
        }
    }
    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dr = std::size_t{1} << rest.size();
    // psi as a dk x dr matrix, rho = M M^+.
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dr));
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t a = 0;
        std::size_t b = 0;
        for (std::size_t q : keep) {
            a = (a << 1) | bit_of(i, q, n);
        }
        for (std::size_t q : rest) {
            b = (b << 1) | bit_of(i, q, n);
        }
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state[i];
    }
    return DensityMatrix::physical(hermitian_part(m * m.adjoint()), 1e-9);
}

ShotResult sample_shots(const QuantumState& state, std::string_view basis, std::uint64_t shots,
                        std::uint64_t seed) {
    const std::size_t n = log2_exact(state.dim());
    const Vector rotated = rotated_register(state.amplitudes(), basis, n, n);
    return sample_probs(probabilities_of(rotated), {n, n, 0}, basis, shots, seed);
}

ShotResult sample_shots(const DensityMatrix& rho, std::string_view basis, std::uint64_t shots,
                        std::uint64_t seed) {
    const std::size_t n = log2_exact(rho.dim());
    return sample_probs(rotated_diagonal(rho, basis), {n, n, 0}, basis, shots, seed);
}

ShotResult sample_register(const QuantumState& output, const Circuit& layout,
                           std::string_view basis, std::uint64_t shots, std::uint64_t seed) {
    if (output.dim() != (std::size_t{1} << layout.num_qubits())) {
        throw ValidationError("sample_register: state dimension does not match the circuit");
    }
    const Vector rotated =
        rotated_register(output.amplitudes(), basis, layout.num_qubits(), layout.num_system_qubits);
    return sample_probs(probabilities_of(rotated), layout_of(layout), basis, shots, seed);
}

ShotResult exact_distribution(const QuantumState& state, std::string_view basis) {
    const std::size_t n = log2_exact(state.dim());
    const Vector rotated = rotated_register(state.amplitudes(), basis, n, n);
    return exact_probs(probabilities_of(rotated), {n, n, 0}, basis);
}

ShotResult exact_distribution(const DensityMatrix& rho, std::string_view basis) {
    const std::size_t n = log2_exact(rho.dim());
    return exact_probs(rotated_diagonal(rho, basis), {n, n, 0}, basis);
}

ShotResult exact_register(const QuantumState& output, const Circuit& layout, std::string_view basis) {
    if (output.dim() != (std::size_t{1} << layout.num_qubits())) {
        throw ValidationError("exact_register: state dimension does not match the circuit");
    }
    const Vector rotated =
        rotated_register(output.amplitudes(), basis, layout.num_qubits(), layout.num_system_qubits);
    return exact_probs(probabilities_of(rotated), layout_of(layout), basis);
}

std::uint64_t job_seed(std::uint64_t seed, std::uint64_t term, std::uint64_t basis,
                       std::uint64_t time_index) {
    // splitmix64 over the concatenated job coordinates.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(seed);
    h = mix(h ^ term);
    h = mix(h ^ basis);
    h = mix(h ^ time_index);
    return h;
}

}  // namespace oqsim
