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

// End-to-end trajectory runs: a model, a time grid, an evolution method, an
// optional noise emulator and a mitigation chain (twirl, invert, project).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/circuits.hpp"
#include "oqsim/matkernel.hpp"
#include "oqsim/mitigation.hpp"
#include "oqsim/models.hpp"
#include "oqsim/serialization.hpp"

namespace oqsim {

enum class Method { ExactOracle, Trotter, KrausMatrix, KrausCircuitIdeal, KrausCircuitShots };
enum class SeriesKind { Auto, Perturbative, Reduced };
enum class MitigationKind { None, QDC, PauliFit, TwirlThenQDC };

std::string method_name(Method m);
Method method_from_name(const std::string& name);
std::string mitigation_name(MitigationKind m);
MitigationKind mitigation_from_name(const std::string& name);

struct MitigationConfig {
    MitigationKind kind = MitigationKind::None;
    /// Fixed QDC strength; fitted from the t = 0 calibration run when absent.
    std::optional<double> lambda;
    LambdaStrategy strategy = LambdaStrategy::FidelityMax;
    /// Refit the Pauli channel at every time step against the oracle.
    bool per_step = false;
};

/// Synthetic device noise applied to each simulated output before read-out.
struct NoiseConfig {
    double depolarizing = 0.0;
    std::optional<PauliChannel> pauli;

    bool active() const { return depolarizing > 0.0 || pauli.has_value(); }
};

struct ExperimentConfig {
    std::string model_key = "pauli-xx-zz";
    std::optional<double> gamma;
    std::optional<double> omega;
    /// Overrides the preset initial state.
    std::optional<Vector> initial_amplitudes;

    double t_start = 0.0;
    double t_stop = 2.0;
    std::size_t points = 11;

    Method method = Method::KrausMatrix;
    std::size_t trotter_steps = 64;
    std::size_t order = 3;
    SeriesKind series = SeriesKind::Auto;
    /// Circuit methods on abelian models: one group circuit instead of per-term circuits.
    bool group_circuit = false;
    std::size_t shots = 1024;
    std::uint64_t seed = 1234;
    DiagonalScheme scheme = DiagonalScheme::Gray;
    std::size_t max_ancillas = 12;

    NoiseConfig noise;
    MitigationConfig mitigation;

    bool write_states = true;
    bool write_fields = false;
    double field_half_width = 5.0;
    double field_step = 0.05;

    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;

    void validate() const;
    std::vector<double> times() const;
};

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& c);

struct TermDiagnostic {
    std::size_t order = 0;
    std::vector<std::size_t> indices;
    double weight = 0.0;
    double survival = 1.0;
};

struct TrajectoryRecord {
    std::size_t index = 0;
    double t = 0.0;
    DensityMatrix raw = DensityMatrix::maximally_mixed(1);
    DensityMatrix mitigated = DensityMatrix::maximally_mixed(1);
    DensityMatrix oracle = DensityMatrix::maximally_mixed(1);
    double fidelity = 1.0;      // mitigated vs oracle
    double fidelity_raw = 1.0;  // projected raw vs oracle
    double trace_distance = 0.0;  // raw vs oracle
    double entropy = 0.0;       // mitigated
    std::vector<std::pair<std::string, double>> observables;
    std::vector<TermDiagnostic> terms;
    /// Bound the method guarantees on trace distance to the oracle.
    double declared_bound = 0.0;
};

/// Preset with the config's parameter overrides applied.
ModelPreset resolve_model(const ExperimentConfig& config);

/// Observable columns for a model: Z-string expectations and populations for
/// qubit models, quadratures and parity for oscillator models.
std::vector<std::pair<std::string, double>> observables_for(const ModelPreset& preset,
                                                            const DensityMatrix& rho);

using RecordSink = std::function<void(const TrajectoryRecord&)>;

/// Runs the configured pipeline and hands records to `sink` in time order.
void run_experiment(const ExperimentConfig& config, const RecordSink& sink);
std::vector<TrajectoryRecord> run_experiment(const ExperimentConfig& config);

/// Largest trace distance between the configured method and the oracle
/// minus its declared bound; positive means the check failed.
struct CheckResult {
    double worst_distance = 0.0;
    double worst_excess = 0.0;
    bool passed = true;
};
CheckResult check_against_oracle(const ExperimentConfig& config);

}  // namespace oqsim
