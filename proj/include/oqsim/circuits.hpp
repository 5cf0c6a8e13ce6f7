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

// Gate-level circuits for Kraus terms and group evolutions, a statevector
// simulator, ancilla post-selection, seeded shot sampling and Pauli
// tomography.
//
// Qubit 0 is the most significant bit of every basis label. System qubits
// come first; ancillas follow.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oqsim/kraus.hpp"
#include "oqsim/lindblad.hpp"
#include "oqsim/matkernel.hpp"

namespace oqsim {

enum class GateKind { X, Y, Z, H, Phase, Rz, Ry, CNOT, Unitary };

struct Control {
    std::size_t qubit = 0;
    bool value = true;  // fire on |1> when true, on |0> when false
};

struct Gate {
    GateKind kind = GateKind::X;
    /// targets[0] is the most significant bit of the gate matrix.
    std::vector<std::size_t> targets;
    std::vector<Control> controls;
    double angle = 0.0;
    Matrix matrix;  // GateKind::Unitary only

    /// Matrix acting on the targets, controls excluded.
    Matrix target_matrix() const;
    std::size_t arity() const { return targets.size() + controls.size(); }

    static Gate x(std::size_t q);
    static Gate y(std::size_t q);
    static Gate z(std::size_t q);
    static Gate h(std::size_t q);
    /// diag(1, e^{i angle}).
    static Gate phase(std::size_t q, double angle);
    /// diag(e^{-i angle/2}, e^{i angle/2}).
    static Gate rz(std::size_t q, double angle);
    /// exp(-i angle Y / 2).
    static Gate ry(std::size_t q, double angle);
    static Gate cnot(std::size_t control, std::size_t target);
    static Gate unitary(std::vector<std::size_t> targets, Matrix m);
};

std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

struct Circuit {
    std::size_t num_system_qubits = 0;
    std::size_t num_ancilla_qubits = 0;
    std::vector<Gate> gates;
    /// Qubit indices that must read |0> for a run to count.
    std::vector<std::size_t> postselect;
    /// Overall phase e^{i global_phase} applied after the gates.
    double global_phase = 0.0;

    std::size_t num_qubits() const { return num_system_qubits + num_ancilla_qubits; }

    /// Throws ValidationError on out-of-range or overlapping indices.
    void validate() const;

    /// Appends `sub` with its qubit i relabelled to qubit_map[i].
    void compose(const Circuit& sub, const std::vector<std::size_t>& qubit_map);

    /// Gates touching at least two qubits.
    std::size_t multi_qubit_gate_count() const;
};

struct ShotResult {
    std::string basis;
    /// Accepted shots per system bitstring.
    std::map<std::string, std::uint64_t> counts;
    /// Filled instead of counts in infinite-shot mode.
    std::map<std::string, double> probabilities;
    std::uint64_t shots = 0;
    double accepted_fraction = 1.0;
    bool exact = false;

    /// Normalized outcome distribution of the accepted shots.
    std::map<std::string, double> distribution() const;
};

// ---------------------------------------------------------------------------
// Building blocks

/// [[L, sqrt(I - L L^+)], [sqrt(I - L^+L), -L^+]]; the first block row and
/// column correspond to the dilation qubit reading |0>.
Matrix sznagy_dilation(const Matrix& l);

enum class DiagonalScheme { Binary, Gray };

/// diag(e^{i phases}) on log2(d) qubits, exact including the global phase.
Circuit encode_diagonal_unitary(const RealVector& phases, DiagonalScheme scheme);

/// log2(d) system qubits plus one ancilla (the last qubit); post-selecting the
/// ancilla on |0> leaves diag(decays).
Circuit encode_diagonal_contraction(const RealVector& decays);

/// Uniformly controlled Ry or Rz via the Gray-code CNOT ladder. angles[x] is
/// applied when the controls (controls[0] most significant) read x.
void append_uniformly_controlled_rotation(Circuit& circuit, GateKind axis,
                                          const std::vector<std::size_t>& controls,
                                          std::size_t target, const std::vector<double>& angles);

/// |0...0> -> sum_m amplitudes[m] |m> for nonnegative amplitudes.
Circuit prepare_distribution(const std::vector<double>& amplitudes);

struct KrausCircuitOptions {
    DiagonalScheme scheme = DiagonalScheme::Gray;
    std::size_t max_ancillas = 12;
};

/// Circuit whose post-selected output is T(t) L_{k_1} ... L_{k_m} |psi>, that
/// is K|psi> / a_mk. Lindblad operators must have spectral norm <= 1.
Circuit build_kraus_circuit(const KrausTerm& term, const LindbladModel& model, double t,
                            const KrausCircuitOptions& options = {});

/// Ancilla registers prepared in the hyperbolic distributions control binary
/// powers of each rescaled L'_n, followed by the unitary e^{Gamma' t / 2} T(t).
/// Ancillas are traced out, not post-selected.
Circuit build_group_circuit(const LindbladModel& model, double t);

// ---------------------------------------------------------------------------
// Execution

/// input (x) |0...0> on the circuit's ancillas.
QuantumState with_ancillas(const QuantumState& system, const Circuit& circuit);

QuantumState simulate_statevector(const Circuit& circuit, const QuantumState& input);

/// Full unitary of a small circuit.
Matrix circuit_unitary(const Circuit& circuit);

struct PostselectResult {
    /// Renormalized state of the remaining qubits; empty when nothing survives.
    std::optional<QuantumState> state;
    double probability = 0.0;
};

PostselectResult postselect(const QuantumState& state, const std::vector<std::size_t>& qubits);

/// Reduced density matrix of `keep` (in the given order).
DensityMatrix reduced_density_matrix(const QuantumState& state, const std::vector<std::size_t>& keep);

/// Samples a system-only state in a Pauli basis.
ShotResult sample_shots(const QuantumState& state, std::string_view basis, std::uint64_t shots,
                        std::uint64_t seed);
ShotResult sample_shots(const DensityMatrix& rho, std::string_view basis, std::uint64_t shots,
                        std::uint64_t seed);

/// Samples the output register of `layout`: system qubits in `basis`,
/// ancillas in Z, post-selection on layout.postselect, other ancillas
/// marginalized.
ShotResult sample_register(const QuantumState& output, const Circuit& layout,
                           std::string_view basis, std::uint64_t shots, std::uint64_t seed);

/// Infinite-shot counterparts.
ShotResult exact_distribution(const QuantumState& state, std::string_view basis);
ShotResult exact_distribution(const DensityMatrix& rho, std::string_view basis);
ShotResult exact_register(const QuantumState& output, const Circuit& layout, std::string_view basis);

/// Deterministic per-job seed.
std::uint64_t job_seed(std::uint64_t seed, std::uint64_t term, std::uint64_t basis,
                       std::uint64_t time_index);

// ---------------------------------------------------------------------------
// Tomography

/// All 3^N measurement bases over X, Y, Z, qubit 0 most significant.
std::vector<std::string> pauli_bases(std::size_t num_qubits);

struct TermResults {
    /// |a_mk|^2 for this Kraus term.
    double weight_sq = 1.0;
    /// One result per measurement basis.
    std::vector<ShotResult> results;
};

/// Expectation of every Pauli string (base-4 index) for one term's outcomes,
/// averaged over compatible bases.
std::vector<double> pauli_expectations(const std::vector<ShotResult>& results, std::size_t num_qubits);

/// Linear-inversion reconstruction of sum_terms |a|^2 survival rho_term.
DensityMatrix tomography(const std::vector<TermResults>& terms, std::size_t num_qubits);

}  // namespace oqsim
