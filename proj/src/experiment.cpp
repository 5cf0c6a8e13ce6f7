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

#include "oqsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "oqsim/analysis.hpp"
#include "oqsim/kraus.hpp"
#include "oqsim/lindblad.hpp"

namespace oqsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactSlack = 1e-9;
// Time index used for seeds of the t = 0 calibration run.
constexpr std::uint64_t kCalibrationIndex = 0xC0FFEEULL;

template <typename E>
struct NameTable {
    std::vector<std::pair<std::string, E>> entries;

    std::string name(E value) const {
        for (const auto& [k, v] : entries) {
            if (v == value) {
                return k;
            }
        }
        return "?";
    }
    E parse(const std::string& key, const char* what) const {
        for (const auto& [k, v] : entries) {
            if (k == key) {
                return v;
            }
        }
        throw ValidationError(std::string("unknown ") + what + " '" + key + "'");
    }
};

const NameTable<Method>& methods() {
    static const NameTable<Method> t{{{"exact", Method::ExactOracle},
                                      {"trotter", Method::Trotter},
                                      {"kraus-matrix", Method::KrausMatrix},
                                      {"kraus-circuit-ideal", Method::KrausCircuitIdeal},
                                      {"kraus-circuit-shots", Method::KrausCircuitShots}}};
    return t;
}

const NameTable<MitigationKind>& mitigations() {
    static const NameTable<MitigationKind> t{{{"none", MitigationKind::None},
                                              {"qdc", MitigationKind::QDC},
                                              {"pauli-fit", MitigationKind::PauliFit},
                                              {"twirl-qdc", MitigationKind::TwirlThenQDC}}};
    return t;
}

const NameTable<SeriesKind>& series_kinds() {
    static const NameTable<SeriesKind> t{{{"auto", SeriesKind::Auto},
                                          {"perturbative", SeriesKind::Perturbative},
                                          {"reduced", SeriesKind::Reduced}}};
    return t;
}

const NameTable<DiagonalScheme>& schemes() {
    static const NameTable<DiagonalScheme> t{{{"gray", DiagonalScheme::Gray},
                                              {"binary", DiagonalScheme::Binary}}};
    return t;
}

const NameTable<LambdaStrategy>& strategies() {
    static const NameTable<LambdaStrategy> t{{{"fidelity", LambdaStrategy::FidelityMax},
                                              {"frobenius", LambdaStrategy::FrobeniusMin}}};
    return t;
}

DensityMatrix apply_noise(const NoiseConfig& noise, const DensityMatrix& rho) {
    DensityMatrix out = rho;
    if (noise.depolarizing > 0.0) {
        out = apply_qdc(DepolarizingChannel{log2_exact(rho.dim()), noise.depolarizing}, out);
    }
    if (noise.pauli) {
        out = apply_pauli_channel(*noise.pauli, out);
    }
    return out;
}

ShotResult empty_result(const std::string& basis, std::uint64_t shots) {
    ShotResult r;
    r.basis = basis;
    r.shots = shots;
    r.exact = shots == 0;
    r.accepted_fraction = 0.0;
    return r;
}

// Raw output of one time step before mitigation.
struct StepOutput {
    DensityMatrix raw = DensityMatrix::maximally_mixed(1);
    std::vector<TermDiagnostic> terms;
    double bound = kInf;
};

class Pipeline {
  public:
    explicit Pipeline(const ExperimentConfig& config)
        : config_(config),
          preset_(resolve_model(config)),
          oracle_(preset_.model),
          rho0_(DensityMatrix::from_state(preset_.initial)) {
        if (is_kraus_method()) {
            const ConditionReport report = check_conditions(preset_.model);
            if (!report.all_satisfied()) {
                throw ValidationError("Kraus methods need conditions (i)-(iv); failing: " +
                                      report.failure_summary());
            }
            normalized_ = normalize_lindblads(preset_.model);
            structure_ = detect_group_structure(*normalized_);
        }
    }

    const ModelPreset& preset() const { return preset_; }
    DensityMatrix oracle(double t) const { return oracle_.evolve(rho0_, t); }
    const DensityMatrix& initial() const { return rho0_; }

    StepOutput run(double t, std::uint64_t time_index) const {
        StepOutput out;
        switch (config_.method) {
            case Method::ExactOracle:
                out.raw = oracle(t);
                out.bound = kExactSlack;
                break;
            case Method::Trotter:
                out.raw = trotter_evolve(preset_.model, rho0_, t, config_.trotter_steps);
                out.bound = kInf;
                break;
            case Method::KrausMatrix: {
                const KrausSeries series = build_series(t);
                out.raw = apply_series(series, rho0_);
                out.bound = series.tail_bound + kExactSlack;
                for (const KrausTerm& term : series.terms) {
                    out.terms.push_back({term.order, term.indices, term.weight, 1.0});
                }
                break;
            }
            case Method::KrausCircuitIdeal:
            case Method::KrausCircuitShots:
                out = run_circuits(t, time_index);
                break;
        }
        if (config_.noise.active()) {
            if (config_.method != Method::KrausCircuitIdeal && config_.method != Method::KrausCircuitShots) {
                out.raw = apply_noise(config_.noise, out.raw);
            }
            out.bound = kInf;
        }
        return out;
    }

  private:
    bool is_kraus_method() const {
        return config_.method == Method::KrausMatrix || config_.method == Method::KrausCircuitIdeal ||
               config_.method == Method::KrausCircuitShots;
    }

    KrausSeries build_series(double t) const {
        const bool reduced = config_.series == SeriesKind::Reduced ||
                             (config_.series == SeriesKind::Auto && structure_.has_value());
        if (reduced) {
            return build_reduced_series(*normalized_, t);
        }
        return build_tp_series(*normalized_, t, config_.order);
    }

    ShotResult measure(const QuantumState& output, const Circuit& circuit, const std::string& basis,
                       std::uint64_t seed) const {
        if (config_.method == Method::KrausCircuitIdeal) {
            return exact_register(output, circuit, basis);
        }
        return sample_register(output, circuit, basis, config_.shots, seed);
    }

    ShotResult measure_noisy(const DensityMatrix& rho, double survival, const std::string& basis,
                             std::uint64_t seed) const {
        if (config_.method == Method::KrausCircuitIdeal) {
            if (survival <= 0.0) {
                return empty_result(basis, 0);
            }
            ShotResult r = exact_distribution(rho, basis);
            r.accepted_fraction = survival;
            return r;
        }
        std::mt19937_64 rng(seed);
        std::binomial_distribution<std::uint64_t> keep(config_.shots, std::clamp(survival, 0.0, 1.0));
        const std::uint64_t accepted = keep(rng);
        if (accepted == 0) {
            return empty_result(basis, config_.shots);
        }
        ShotResult r = sample_shots(rho, basis, accepted, rng());
        r.shots = config_.shots;
        r.accepted_fraction = static_cast<double>(accepted) / static_cast<double>(config_.shots);
        return r;
    }

    StepOutput run_circuits(double t, std::uint64_t time_index) const {
        StepOutput out;
        const std::size_t nq = log2_exact(preset_.model.dim());
        const std::vector<std::string> bases = pauli_bases(nq);
        std::vector<TermResults> data;

        auto collect = [&](const Circuit& circuit, const QuantumState& output, std::uint64_t term_index,
                           double weight_sq, TermDiagnostic diag) {
            TermResults tr;
            tr.weight_sq = weight_sq;
            std::optional<DensityMatrix> noisy;
            double survival = 1.0;
            if (!circuit.postselect.empty()) {
                survival = postselect(output, circuit.postselect).probability;
            }
            if (config_.noise.active()) {
                std::vector<std::size_t> system(circuit.num_system_qubits);
                for (std::size_t q = 0; q < system.size(); ++q) {
                    system[q] = q;
                }
                if (!circuit.postselect.empty()) {
                    const PostselectResult ps = postselect(output, circuit.postselect);
                    if (ps.state) {
                        // Remaining ancillas (if any) are traced out below.
                        const std::size_t remaining = log2_exact(ps.state->dim());
                        std::vector<std::size_t> keep(circuit.num_system_qubits);
                        for (std::size_t q = 0; q < keep.size(); ++q) {
                            keep[q] = q;
                        }
                        noisy = apply_noise(config_.noise, remaining == nq ? DensityMatrix::from_state(*ps.state)
                                                                           : reduced_density_matrix(*ps.state, keep));
                    }
                } else {
                    noisy = apply_noise(config_.noise, reduced_density_matrix(output, system));
                }
            }
            for (std::size_t b = 0; b < bases.size(); ++b) {
                const std::uint64_t seed = job_seed(config_.seed, term_index, b, time_index);
                if (config_.noise.active()) {
                    tr.results.push_back(noisy ? measure_noisy(*noisy, survival, bases[b], seed)
                                               : empty_result(bases[b], config_.shots));
                } else {
                    tr.results.push_back(measure(output, circuit, bases[b], seed));
                }
            }
            diag.survival = survival;
            out.terms.push_back(std::move(diag));
            data.push_back(std::move(tr));
        };

        KrausCircuitOptions opts;
        opts.scheme = config_.scheme;
        opts.max_ancillas = config_.max_ancillas;

        if (config_.group_circuit) {
            if (!structure_ || !structure_->abelian()) {
                throw ValidationError("group circuits need an abelian group structure");
            }
            const Circuit c = build_group_circuit(*normalized_, t);
            const QuantumState output = simulate_statevector(c, with_ancillas(preset_.initial, c));
            collect(c, output, 0, 1.0, TermDiagnostic{0, {}, 1.0, 1.0});
            out.bound = kExactSlack;
        } else {
            const KrausSeries series = build_series(t);
            for (std::size_t i = 0; i < series.terms.size(); ++i) {
                const KrausTerm& term = series.terms[i];
                const Circuit c = build_kraus_circuit(term, *normalized_, t, opts);
                const QuantumState output = simulate_statevector(c, with_ancillas(preset_.initial, c));
                collect(c, output, i, term.weight * term.weight,
                        TermDiagnostic{term.order, term.indices, term.weight, 1.0});
            }
            out.bound = series.tail_bound + kExactSlack;
        }
        if (config_.method == Method::KrausCircuitShots) {
            out.bound = kInf;
        }
        out.raw = tomography(data, nq);
        return out;
    }

    const ExperimentConfig& config_;
    ModelPreset preset_;
    ExactEvolver oracle_;
    DensityMatrix rho0_;
    std::optional<LindbladModel> normalized_;
    std::optional<GroupStructure> structure_;
};

struct Calibration {
    std::optional<double> lambda;
    std::optional<PauliChannel> pauli;
};

DensityMatrix twirl_if_needed(const ExperimentConfig& config, const ModelPreset& preset,
                              const DensityMatrix& rho) {
    if (config.mitigation.kind != MitigationKind::TwirlThenQDC) {
        return rho;
    }
    if (!preset.parity) {
        throw ValidationError("twirl-qdc mitigation needs a model with a parity operator");
    }
    return parity_twirl(rho, *preset.parity);
}

Calibration calibrate(const ExperimentConfig& config, const Pipeline& pipeline) {
    Calibration cal;
    const MitigationConfig& m = config.mitigation;
    const bool needs_lambda =
        (m.kind == MitigationKind::QDC || m.kind == MitigationKind::TwirlThenQDC) && !m.lambda;
    const bool needs_pauli = m.kind == MitigationKind::PauliFit && !m.per_step;
    if (m.lambda) {
        cal.lambda = m.lambda;
    }
    if (!needs_lambda && !needs_pauli) {
        return cal;
    }
    const StepOutput step = pipeline.run(0.0, kCalibrationIndex);
    const DensityMatrix noisy = twirl_if_needed(config, pipeline.preset(), step.raw);
    const std::vector<StatePair> pairs{{pipeline.initial(), noisy}};
    if (needs_lambda) {
        cal.lambda = fit_qdc_lambda(pairs, m.strategy);
    }
    if (needs_pauli) {
        cal.pauli = fit_pauli_channel(pairs).channel;
    }
    return cal;
}

TrajectoryRecord finish_record(const ExperimentConfig& config, const Pipeline& pipeline,
                               const Calibration& cal, std::size_t index, double t, StepOutput step) {
    TrajectoryRecord rec;
    rec.index = index;
    rec.t = t;
    rec.oracle = pipeline.oracle(t);
    rec.raw = step.raw;
    rec.terms = std::move(step.terms);
    rec.declared_bound = step.bound;

    DensityMatrix x = twirl_if_needed(config, pipeline.preset(), step.raw);
    const std::size_t nq = is_power_of_two(x.dim()) ? log2_exact(x.dim()) : 0;
    switch (config.mitigation.kind) {
        case MitigationKind::None:
            break;
        case MitigationKind::QDC:
        case MitigationKind::TwirlThenQDC:
            x = invert_channel(DepolarizingChannel{nq, cal.lambda.value_or(0.0)}, x);
            break;
        case MitigationKind::PauliFit: {
            PauliChannel ch;
            if (config.mitigation.per_step) {
                ch = fit_pauli_channel({{rec.oracle, x}}).channel;
            } else {
                ch = *cal.pauli;
            }
            x = invert_channel(ch, x);
            break;
        }
    }
    rec.mitigated = project_physical(DensityMatrix::raw(hermitian_part(x.matrix())));
    rec.fidelity = fidelity(rec.mitigated, rec.oracle);
    rec.fidelity_raw = fidelity(rec.raw, rec.oracle);
    rec.trace_distance = trace_distance(rec.raw.matrix(), rec.oracle.matrix());
    rec.entropy = von_neumann_entropy(rec.mitigated);
    rec.observables = observables_for(pipeline.preset(), rec.mitigated);
    return rec;
}

std::string index_label(std::size_t i, std::size_t dim) {
    if (!is_power_of_two(dim)) {
        return std::to_string(i);
    }
    const std::size_t n = log2_exact(dim);
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if ((i >> (n - 1 - q)) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

}  // namespace

std::string method_name(Method m) { return methods().name(m); }
Method method_from_name(const std::string& name) { return methods().parse(name, "method"); }
std::string mitigation_name(MitigationKind m) { return mitigations().name(m); }
MitigationKind mitigation_from_name(const std::string& name) {
    return mitigations().parse(name, "mitigation");
}

void ExperimentConfig::validate() const {
    if (!(t_start >= 0.0) || !(t_stop >= t_start)) {
        throw ValidationError("config: need 0 <= t_start <= t_stop");
    }
    if (points < 1) {
        throw ValidationError("config: points must be at least 1");
    }
    if (method == Method::KrausCircuitShots && shots < 1) {
        throw ValidationError("config: shots must be at least 1");
    }
    if (method == Method::Trotter && trotter_steps < 1) {
        throw ValidationError("config: trotter_steps must be at least 1");
    }
    if (!(noise.depolarizing >= 0.0 && noise.depolarizing <= 1.0)) {
        throw ValidationError("config: noise.depolarizing must lie in [0, 1]");
    }
    if (mitigation.lambda && !(*mitigation.lambda >= 0.0 && *mitigation.lambda < 1.0)) {
        throw ValidationError("config: mitigation.lambda must lie in [0, 1)");
    }
    if (!(field_half_width > 0.0) || !(field_step > 0.0)) {
        throw ValidationError("config: field grid must have positive width and step");
    }
}

std::vector<double> ExperimentConfig::times() const {
    std::vector<double> out;
    if (points == 1) {
        out.push_back(t_start);
        return out;
    }
    for (std::size_t i = 0; i < points; ++i) {
        out.push_back(t_start + (t_stop - t_start) * static_cast<double>(i) /
                                    static_cast<double>(points - 1));
    }
    return out;
}

ExperimentConfig config_from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.model_key = j.value("model", c.model_key);
        if (j.contains("gamma")) {
            c.gamma = j.at("gamma").get<double>();
        }
        if (j.contains("omega")) {
            c.omega = j.at("omega").get<double>();
        }
        if (j.contains("initial_state")) {
            c.initial_amplitudes = vector_from_json(j.at("initial_state"));
        }
        if (j.contains("time")) {
            const json& t = j.at("time");
            c.t_start = t.value("start", c.t_start);
            c.t_stop = t.value("stop", c.t_stop);
            c.points = t.value("points", c.points);
        }
        if (j.contains("method")) {
            c.method = method_from_name(j.at("method").get<std::string>());
        }
        c.trotter_steps = j.value("trotter_steps", c.trotter_steps);
        c.order = j.value("order", c.order);
        if (j.contains("series")) {
            c.series = series_kinds().parse(j.at("series").get<std::string>(), "series kind");
        }
        c.group_circuit = j.value("group_circuit", c.group_circuit);
        c.shots = j.value("shots", c.shots);
        c.seed = j.value("seed", c.seed);
        if (j.contains("scheme")) {
            c.scheme = schemes().parse(j.at("scheme").get<std::string>(), "diagonal scheme");
        }
        c.max_ancillas = j.value("max_ancillas", c.max_ancillas);
        if (j.contains("noise")) {
            const json& n = j.at("noise");
            c.noise.depolarizing = n.value("depolarizing", 0.0);
            if (n.contains("pauli")) {
                c.noise.pauli = pauli_channel_from_json(n.at("pauli"));
            }
        }
        if (j.contains("mitigation")) {
            const json& m = j.at("mitigation");
            c.mitigation.kind = mitigation_from_name(m.value("kind", std::string("none")));
            if (m.contains("lambda") && !m.at("lambda").is_null()) {
                c.mitigation.lambda = m.at("lambda").get<double>();
            }
            if (m.contains("strategy")) {
                c.mitigation.strategy = strategies().parse(m.at("strategy").get<std::string>(), "strategy");
            }
            c.mitigation.per_step = m.value("per_step", false);
        }
        if (j.contains("outputs")) {
            const json& o = j.at("outputs");
            c.write_states = o.value("states", c.write_states);
            c.write_fields = o.value("fields", c.write_fields);
            c.field_half_width = o.value("field_half_width", c.field_half_width);
            c.field_step = o.value("field_step", c.field_step);
        }
        c.threads = j.value("threads", c.threads);
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

json config_to_json(const ExperimentConfig& c) {
    json j = {{"model", c.model_key},
              {"time", {{"start", c.t_start}, {"stop", c.t_stop}, {"points", c.points}}},
              {"method", method_name(c.method)},
              {"trotter_steps", c.trotter_steps},
              {"order", c.order},
              {"series", series_kinds().name(c.series)},
              {"group_circuit", c.group_circuit},
              {"shots", c.shots},
              {"seed", c.seed},
              {"scheme", schemes().name(c.scheme)},
              {"max_ancillas", c.max_ancillas},
              {"threads", c.threads}};
    if (c.gamma) {
        j["gamma"] = *c.gamma;
    }
    if (c.omega) {
        j["omega"] = *c.omega;
    }
    if (c.initial_amplitudes) {
        j["initial_state"] = vector_to_json(*c.initial_amplitudes);
    }
    json noise = {{"depolarizing", c.noise.depolarizing}};
    if (c.noise.pauli) {
        noise["pauli"] = channel_to_json(*c.noise.pauli);
    }
    j["noise"] = noise;
    json mit = {{"kind", mitigation_name(c.mitigation.kind)},
                {"strategy", strategies().name(c.mitigation.strategy)},
                {"per_step", c.mitigation.per_step}};
    mit["lambda"] = c.mitigation.lambda ? json(*c.mitigation.lambda) : json(nullptr);
    j["mitigation"] = mit;
    j["outputs"] = {{"states", c.write_states},
                    {"fields", c.write_fields},
                    {"field_half_width", c.field_half_width},
                    {"field_step", c.field_step}};
    return j;
}

ModelPreset resolve_model(const ExperimentConfig& config) {
    ModelPreset preset = make_preset(config.model_key);
    if (config.gamma || config.omega) {
        const std::string& k = config.model_key;
        if (k == "schwinger-jz") {
            preset.model = schwinger_model(config.omega.value_or(1.0), SchwingerAxis::Z,
                                           config.gamma.value_or(preset.model.gammas[0]), 1);
        } else if (k == "qho-damped" || k == "qho-cat") {
            preset.model = damped_qho_model(config.omega.value_or(1.0),
                                            config.gamma.value_or(preset.model.gammas[0]), 3);
        } else {
            throw ValidationError("gamma/omega overrides apply to oscillator models only");
        }
    }
    if (config.initial_amplitudes) {
        if (static_cast<std::size_t>(config.initial_amplitudes->size()) != preset.model.dim()) {
            throw ValidationError("initial_state: wrong dimension for the model");
        }
        preset.initial = QuantumState(*config.initial_amplitudes);
    }
    return preset;
}

std::vector<std::pair<std::string, double>> observables_for(const ModelPreset& preset,
                                                            const DensityMatrix& rho) {
    std::vector<std::pair<std::string, double>> out;
    const std::size_t d = rho.dim();
    if (preset.mode_operators.empty() && is_power_of_two(d)) {
        const std::size_t n = log2_exact(d);
        for (std::size_t idx = 1; idx < (std::size_t{1} << (2 * n)); ++idx) {
            const std::string label = pauli_label(idx, n);
            if (label.find_first_of("XY") != std::string::npos) {
                continue;
            }
            out.emplace_back(label, (rho.matrix() * pauli_string(label)).trace().real());
        }
    }
    const std::vector<Quadrature> quads = quadrature_expectations(rho, preset.mode_operators);
    for (std::size_t m = 0; m < quads.size(); ++m) {
        const std::string suffix = quads.size() == 1 ? "" : std::to_string(m + 1);
        out.emplace_back("x" + suffix, quads[m].x);
        out.emplace_back("p" + suffix, quads[m].p);
    }
    if (preset.parity) {
        out.emplace_back("parity", (rho.matrix() * *preset.parity).trace().real());
    }
    for (std::size_t i = 0; i < d; ++i) {
        out.emplace_back("P" + index_label(i, d), rho(i, i).real());
    }
    return out;
}

void run_experiment(const ExperimentConfig& config, const RecordSink& sink) {
    config.validate();
    const Pipeline pipeline(config);
    const Calibration cal = calibrate(config, pipeline);
    const std::vector<double> times = config.times();

    std::size_t workers = config.threads;
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, times.size());

    for (std::size_t start = 0; start < times.size(); start += workers) {
        const std::size_t stop = std::min(times.size(), start + workers);
        std::vector<std::optional<TrajectoryRecord>> batch(stop - start);
        std::vector<std::exception_ptr> errors(stop - start);
        auto job = [&](std::size_t i) {
            try {
                StepOutput step = pipeline.run(times[i], i);
                batch[i - start] = finish_record(config, pipeline, cal, i, times[i], std::move(step));
            } catch (...) {
                errors[i - start] = std::current_exception();
            }
        };
        if (stop - start == 1) {
            job(start);
        } else {
            std::vector<std::thread> threads;
            for (std::size_t i = start; i < stop; ++i) {
                threads.emplace_back(job, i);
            }
            for (std::thread& th : threads) {
                th.join();
            }
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (errors[i]) {
                std::rethrow_exception(errors[i]);
            }
            sink(*batch[i]);
        }
    }
}

std::vector<TrajectoryRecord> run_experiment(const ExperimentConfig& config) {
    std::vector<TrajectoryRecord> out;
    run_experiment(config, [&](const TrajectoryRecord& r) { out.push_back(r); });
    return out;
}

CheckResult check_against_oracle(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.method = Method::KrausMatrix;
    c.noise = {};
    c.mitigation = {};
    CheckResult result;
    result.worst_excess = -kInf;
    run_experiment(c, [&](const TrajectoryRecord& r) {
        result.worst_distance = std::max(result.worst_distance, r.trace_distance);
        result.worst_excess = std::max(result.worst_excess, r.trace_distance - r.declared_bound);
    });
    result.passed = result.worst_excess <= 0.0;
    return result;
}

}  // namespace oqsim
