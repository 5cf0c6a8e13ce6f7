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

// Benchmark open systems: Pauli-string dephasing, the two-mode (Schwinger)
// oscillator with angular-momentum damping, and the damped single-mode
// oscillator, plus their reference initial states.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oqsim/lindblad.hpp"
#include "oqsim/matkernel.hpp"

namespace oqsim {

/// Truncated a on levels 0..n_max, <n-1|a|n> = sqrt(n).
Matrix annihilation_operator(std::size_t n_max);

/// H = 0 with one Pauli-string Lindblad operator per label.
LindbladModel pauli_channel_model(const std::vector<std::string>& pauli_strings,
                                  const std::vector<double>& gammas);

enum class SchwingerAxis { X, Y, Z };

/// a_1 (x) I and I (x) a_2 on the two-mode space, index n1 * (cutoff + 1) + n2.
std::vector<Matrix> schwinger_mode_operators(std::size_t cutoff);

/// H = omega (1 + n_1 + n_2) with a single J_axis Lindblad operator.
LindbladModel schwinger_model(double omega, SchwingerAxis axis, double gamma, std::size_t cutoff = 1);

/// H = omega a^+a, L = a.
LindbladModel damped_qho_model(double omega, double gamma, std::size_t n_max);

/// Normalized alpha |1> + alpha^3 / sqrt(6) |3> on levels 0..n_max.
QuantumState cat_state(cplx alpha, std::size_t n_max);

/// Parity diag((-1)^n) on levels 0..n_max.
Matrix parity_operator(std::size_t n_max);

/// "pauli", "schwinger" and "qho" reference states.
std::map<std::string, QuantumState> reference_initial_states();

/// A model together with everything an experiment needs to run it.
struct ModelPreset {
    std::string key;
    std::string description;
    LindbladModel model;
    QuantumState initial;
    /// Truncated annihilation operators for quadrature read-out; empty for qubit models.
    std::vector<Matrix> mode_operators;
    /// Symmetry used by parity twirling, when the model has one.
    std::optional<Matrix> parity;
    double t_max = 2.0;
    std::size_t num_times = 11;
};

/// Registry keys: "pauli-xx-zz", "schwinger-jz", "qho-damped", "qho-cat".
std::vector<std::string> preset_keys();
ModelPreset make_preset(std::string_view key);

}  // namespace oqsim
