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

#include "oqsim/models.hpp"

#include <cmath>

namespace oqsim {

namespace {

Matrix identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n);
}

}  // namespace

Matrix annihilation_operator(std::size_t n_max) {
    if (n_max == 0) {
        throw ValidationError("annihilation_operator: n_max must be at least 1");
    }
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    Matrix a = Matrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

LindbladModel pauli_channel_model(const std::vector<std::string>& pauli_strings,
                                  const std::vector<double>& gammas) {
    if (pauli_strings.empty()) {
        throw ValidationError("pauli_channel_model: need at least one Pauli string");
    }
    if (pauli_strings.size() != gammas.size()) {
        throw ValidationError("pauli_channel_model: one rate per Pauli string");
    }
    const std::size_t nq = pauli_strings.front().size();
    LindbladModel model;
    model.hamiltonian = Matrix::Zero(static_cast<Eigen::Index>(1) << nq, static_cast<Eigen::Index>(1) << nq);
    for (const std::string& s : pauli_strings) {
        if (s.size() != nq || nq == 0) {
            throw ValidationError("pauli_channel_model: inconsistent qubit counts");
        }
        model.lindblads.push_back(pauli_string(s));
    }
    model.gammas = gammas;
    model.validate();
    return model;
}

std::vector<Matrix> schwinger_mode_operators(std::size_t cutoff) {
    const Matrix a = annihilation_operator(cutoff);
    const Matrix id = identity(cutoff + 1);
    return {kron(a, id), kron(id, a)};
}

LindbladModel schwinger_model(double omega, SchwingerAxis axis, double gamma, std::size_t cutoff) {
    if (cutoff == 0) {
        throw ValidationError("schwinger_model: cutoff must be at least 1");
    }
    const std::vector<Matrix> modes = schwinger_mode_operators(cutoff);
    const Matrix& a1 = modes[0];
    const Matrix& a2 = modes[1];
    const std::size_t d = (cutoff + 1) * (cutoff + 1);
    LindbladModel model;
    model.hamiltonian = omega * (identity(d) + a1.adjoint() * a1 + a2.adjoint() * a2);
    Matrix j;
    switch (axis) {
        case SchwingerAxis::X:
            j = 0.5 * (a1.adjoint() * a2 + a2.adjoint() * a1);
            break;
        case SchwingerAxis::Y:
            j = (a1.adjoint() * a2 - a2.adjoint() * a1) / (2.0 * kI);
            break;
        case SchwingerAxis::Z:
            j = 0.5 * (a1.adjoint() * a1 - a2.adjoint() * a2);
            break;
        default:
            throw ValidationError("schwinger_model: invalid axis");
    }
    model.lindblads.push_back(j);
    model.gammas.push_back(gamma);
    model.validate();
    return model;
}

LindbladModel damped_qho_model(double omega, double gamma, std::size_t n_max) {
    const Matrix a = annihilation_operator(n_max);
    LindbladModel model;
    model.hamiltonian = omega * a.adjoint() * a;
    model.lindblads.push_back(a);
    model.gammas.push_back(gamma);
    model.validate();
    return model;
}

QuantumState cat_state(cplx alpha, std::size_t n_max) {
    if (n_max < 3) {
        throw ValidationError("cat_state: n_max must be at least 3");
    }
    if (std::abs(alpha) == 0.0) {
        throw ValidationError("cat_state: alpha must be nonzero");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n_max + 1));
    v(1) = alpha;
    v(3) = alpha * alpha * alpha / std::sqrt(6.0);
    return QuantumState::normalized(v);
}

Matrix parity_operator(std::size_t n_max) {
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    Matrix p = Matrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) {
        p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

std::map<std::string, QuantumState> reference_initial_states() {
    std::map<std::string, QuantumState> out;
    Vector pauli(4);
    pauli << 0.0, -0.6, 0.0, -0.8;
    out.emplace("pauli", QuantumState::normalized(pauli));

    Vector schwinger(4);
    schwinger << 1.0, kI, 1.0, 0.0;
    out.emplace("schwinger", QuantumState::normalized(schwinger / std::sqrt(3.0)));

    Vector qho(4);
    qho << 0.0, 0.0, kI, 1.0;
    out.emplace("qho", QuantumState::normalized(qho / std::sqrt(2.0)));
    return out;
}

std::vector<std::string> preset_keys() {
    return {"pauli-xx-zz", "schwinger-jz", "qho-damped", "qho-cat"};
}

ModelPreset make_preset(std::string_view key) {
    const auto states = reference_initial_states();
    if (key == "pauli-xx-zz") {
        return {std::string(key), "two-qubit Pauli channel IX, XI, ZZ, XX",
                pauli_channel_model({"IX", "XI", "ZZ", "XX"}, {0.1, 0.1, 1.0, 1.0}),
                states.at("pauli"), {}, std::nullopt, 2.0, 11};
    }
    if (key == "schwinger-jz") {
        return {std::string(key), "two-mode oscillator with J_z damping, one level per mode",
                schwinger_model(1.0, SchwingerAxis::Z, 1.0, 1),
                states.at("schwinger"), schwinger_mode_operators(1), std::nullopt, 4.0, 5};
    }
    if (key == "qho-damped") {
        return {std::string(key), "damped oscillator, levels 0..3",
                damped_qho_model(1.0, 1.0, 3), states.at("qho"),
                {annihilation_operator(3)}, parity_operator(3), 3.0, 19};
    }
    if (key == "qho-cat") {
        return {std::string(key), "damped oscillator from an odd cat state",
                damped_qho_model(1.0, 0.6, 3), cat_state(1.2, 3),
                {annihilation_operator(3)}, parity_operator(3), 2.0, 9};
    }
    throw ValidationError("unknown model preset '" + std::string(key) + "'");
}

}  // namespace oqsim
