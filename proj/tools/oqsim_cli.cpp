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

// oqsim command line. Exit codes: 0 ok, 1 usage or I/O error,
// 2 validation error, 3 numerical check failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "oqsim/circuits.hpp"
#include "oqsim/errors.hpp"
#include "oqsim/experiment.hpp"
#include "oqsim/kraus.hpp"
#include "oqsim/lindblad.hpp"
#include "oqsim/mitigation.hpp"
#include "oqsim/models.hpp"
#include "oqsim/report.hpp"
#include "oqsim/serialization.hpp"

namespace {

using namespace oqsim;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// Model source shared by the single-shot subcommands.
struct ModelArgs {
    std::string preset = "pauli-xx-zz";
    std::string model_file;
    std::string initial_file;

    void attach(CLI::App* app) {
        app->add_option("--preset", preset, "Preset model key (see `oqsim presets`)");
        app->add_option("--model", model_file, "Model JSON file; overrides --preset")->check(CLI::ExistingFile);
        app->add_option("--initial", initial_file, "Initial state amplitudes as a JSON array")
            ->check(CLI::ExistingFile);
    }

    std::pair<LindbladModel, QuantumState> load() const {
        ModelPreset p = make_preset(preset);
        LindbladModel model = p.model;
        if (!model_file.empty()) {
            model = model_from_json(read_json_file(model_file));
        }
        QuantumState psi = p.initial;
        if (!initial_file.empty()) {
            psi = QuantumState(vector_from_json(read_json_file(initial_file)));
        } else if (!model_file.empty() && model.dim() != p.initial.dim()) {
            psi = QuantumState::basis(model.dim(), 0);
        }
        if (psi.dim() != model.dim()) {
            throw ValidationError("initial state dimension does not match the model");
        }
        return {model, psi};
    }
};

json state_json(const DensityMatrix& rho) {
    return {{"dim", rho.dim()}, {"physical", !rho.is_raw()}, {"matrix", matrix_to_json(rho.matrix())}};
}

int cmd_presets() {
    for (const std::string& key : preset_keys()) {
        const ModelPreset p = make_preset(key);
        fmt::print("{:<14} dim {:>2}  t in [0, {}] x {}  {}\n", key, p.model.dim(), p.t_max, p.num_times,
                   p.description);
    }
    return 0;
}

int cmd_check(const ModelArgs& args, bool strict) {
    const auto [model, psi] = args.load();
    const ConditionReport report = check_conditions(model);
    json out = conditions_to_json(report);
    out["group_structure"] = nullptr;
    if (const auto g = detect_group_structure(normalize_lindblads(model))) {
        out["group_structure"] = {{"periods", g->periods}, {"thetas", g->thetas}, {"abelian", g->abelian()}};
    }
    print_json(out);
    return strict && !report.all_satisfied() ? 2 : 0;
}

int cmd_evolve(const ModelArgs& args, double t, const std::string& method, std::size_t steps) {
    const auto [model, psi] = args.load();
    const DensityMatrix rho0 = DensityMatrix::from_state(psi);
    DensityMatrix rho = DensityMatrix::maximally_mixed(1);
    if (method == "exact") {
        rho = exact_evolve(model, rho0, t);
    } else if (method == "trotter") {
        rho = trotter_evolve(model, rho0, t, steps);
    } else {
        throw ValidationError("evolve: method must be exact or trotter");
    }
    json out = state_json(rho);
    out["t"] = t;
    out["method"] = method;
    print_json(out);
    return 0;
}

KrausSeries series_for(const LindbladModel& normalized, double t, const std::string& kind, std::size_t order) {
    if (kind == "reduced" || (kind == "auto" && detect_group_structure(normalized))) {
        return build_reduced_series(normalized, t);
    }
    if (kind != "auto" && kind != "perturbative") {
        throw ValidationError("series must be auto, perturbative or reduced");
    }
    return build_tp_series(normalized, t, order);
}

int cmd_kraus(const ModelArgs& args, double t, const std::string& kind, std::size_t order, bool apply,
              bool with_check) {
    const auto [model, psi] = args.load();
    const LindbladModel normalized = normalize_lindblads(model);
    const KrausSeries series = series_for(normalized, t, kind, order);
    json out = series_to_json(series);
    int code = 0;
    if (apply || with_check) {
        const DensityMatrix rho0 = DensityMatrix::from_state(psi);
        const DensityMatrix rho = apply_series(series, rho0);
        out["state"] = state_json(rho);
        if (with_check) {
            const double d = trace_distance(rho.matrix(), exact_evolve(model, rho0, t).matrix());
            const double bound = series.tail_bound + 1e-9;
            out["check"] = {{"trace_distance", d}, {"bound", bound}, {"passed", d <= bound}};
            code = d <= bound ? 0 : 3;
        }
    }
    print_json(out);
    return code;
}

int cmd_circuit(const ModelArgs& args, double t, const std::string& kind, std::size_t order,
                std::optional<std::size_t> term, bool group, const std::string& scheme) {
    const auto [model, psi] = args.load();
    const LindbladModel normalized = normalize_lindblads(model);
    json out = json::array();
    if (group) {
        out.push_back(circuit_to_json(build_group_circuit(normalized, t)));
    } else {
        KrausCircuitOptions opts;
        if (scheme == "binary") {
            opts.scheme = DiagonalScheme::Binary;
        } else if (scheme != "gray") {
            throw ValidationError("scheme must be gray or binary");
        }
        const KrausSeries series = series_for(normalized, t, kind, order);
        for (std::size_t i = 0; i < series.terms.size(); ++i) {
            if (term && *term != i) {
                continue;
            }
            json c = circuit_to_json(build_kraus_circuit(series.terms[i], normalized, t, opts));
            c["term"] = {{"index", i}, {"k", series.terms[i].indices}, {"weight", series.terms[i].weight}};
            out.push_back(std::move(c));
        }
        if (term && out.empty()) {
            throw ValidationError(fmt::format("term {} out of range ({} terms)", *term, series.terms.size()));
        }
    }
    print_json(out);
    return 0;
}

int cmd_mitigate(const std::string& states_file, const std::string& method, std::optional<double> lambda,
                 std::size_t calibration) {
    const json states = read_json_file(states_file);
    if (!states.is_array() || states.empty()) {
        throw ValidationError("mitigate: expected a non-empty states.json array");
    }
    std::vector<StatePair> pairs;
    for (const json& rec : states) {
        try {
            const Matrix raw = matrix_from_json(rec.at("raw"));
            const Matrix oracle = matrix_from_json(rec.at("oracle"));
            pairs.emplace_back(DensityMatrix::physical(oracle, 1e-8), DensityMatrix::raw(raw));
        } catch (const json::exception& e) {
            throw ValidationError(std::string("mitigate: ") + e.what());
        }
    }
    if (calibration >= pairs.size()) {
        throw ValidationError("mitigate: calibration index out of range");
    }
    const std::vector<StatePair> cal{pairs[calibration]};
    const std::size_t dim = pairs.front().first.dim();
    const std::size_t nq = log2_exact(dim);
    json out = {{"method", method}};
    std::function<DensityMatrix(const DensityMatrix&)> invert;
    if (method == "qdc") {
        LambdaFitReport rep;
        if (lambda) {
            rep.lambda = *lambda;
        } else {
            rep = fit_qdc_lambda_report(cal, LambdaStrategy::FidelityMax);
        }
        out["fit"] = fit_report_to_json(rep);
        const DepolarizingChannel ch{nq, rep.lambda};
        invert = [ch](const DensityMatrix& r) { return invert_channel(ch, r); };
    } else if (method == "pauli-fit") {
        const PauliFitReport rep = fit_pauli_channel(cal);
        out["fit"] = fit_report_to_json(rep);
        invert = [ch = rep.channel](const DensityMatrix& r) { return invert_channel(ch, r); };
    } else {
        throw ValidationError("mitigate: method must be qdc or pauli-fit");
    }
    json recs = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const DensityMatrix m = project_physical(DensityMatrix::raw(hermitian_part(invert(pairs[i].second).matrix())));
        recs.push_back({{"index", i},
                        {"fidelity_raw", fidelity(pairs[i].second, pairs[i].first)},
                        {"fidelity", fidelity(m, pairs[i].first)},
                        {"mitigated", matrix_to_json(m.matrix())}});
    }
    out["records"] = recs;
    print_json(out);
    return 0;
}

struct ExperimentArgs {
    std::string config_file;
    std::string preset;
    std::string out_dir = "oqsim_out";
    std::string format = "csv";
    bool check = false;
    std::optional<std::string> method;
    std::optional<double> t_start, t_stop, gamma, omega, lambda, depolarizing;
    std::optional<std::size_t> points, order, shots, trotter_steps, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mitigation;
    bool fields = false;
    bool group = false;
};

ExperimentConfig build_config(const ExperimentArgs& a) {
    ExperimentConfig c;
    if (!a.config_file.empty()) {
        c = config_from_json(read_json_file(a.config_file));
    } else if (!a.preset.empty()) {
        const ModelPreset p = make_preset(a.preset);
        c.model_key = p.key;
        c.t_stop = p.t_max;
        c.points = p.num_times;
    }
    if (!a.preset.empty()) {
        c.model_key = a.preset;
    }
    if (a.method) c.method = method_from_name(*a.method);
    if (a.t_start) c.t_start = *a.t_start;
    if (a.t_stop) c.t_stop = *a.t_stop;
    if (a.points) c.points = *a.points;
    if (a.gamma) c.gamma = a.gamma;
    if (a.omega) c.omega = a.omega;
    if (a.order) c.order = *a.order;
    if (a.shots) c.shots = *a.shots;
    if (a.trotter_steps) c.trotter_steps = *a.trotter_steps;
    if (a.threads) c.threads = *a.threads;
    if (a.seed) c.seed = *a.seed;
    if (a.mitigation) c.mitigation.kind = mitigation_from_name(*a.mitigation);
    if (a.lambda) c.mitigation.lambda = a.lambda;
    if (a.depolarizing) c.noise.depolarizing = *a.depolarizing;
    if (a.fields) c.write_fields = true;
    if (a.group) c.group_circuit = true;
    c.validate();
    return c;
}

int cmd_experiment(const ExperimentArgs& a) {
    const ExperimentConfig config = build_config(a);
    const ReportFormat format = a.format == "json" ? ReportFormat::JSON : ReportFormat::CSV;
    if (a.format != "json" && a.format != "csv") {
        throw ValidationError("format must be csv or json");
    }
    {
        ReportWriter writer(a.out_dir, config, resolve_model(config), format);
        run_experiment(config, [&](const TrajectoryRecord& r) { writer.write(r); });
        writer.finish();
        fmt::print("wrote {} records to {}\n", writer.records_written(), a.out_dir);
    }
    if (a.check) {
        const CheckResult r = check_against_oracle(config);
        fmt::print("check: worst trace distance {:.3e}, worst excess over bound {:.3e}: {}\n", r.worst_distance,
                   r.worst_excess, r.passed ? "PASS" : "FAIL");
        return r.passed ? 0 : 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oqsim: open quantum system trajectories via Kraus series and circuits"};
    app.require_subcommand(1);

    app.add_subcommand("presets", "List preset models");

    ModelArgs check_args;
    bool strict = false;
    CLI::App* check = app.add_subcommand("check", "Report the Kraus-series conditions for a model");
    check_args.attach(check);
    check->add_flag("--strict", strict, "Exit 2 when a condition fails");

    ModelArgs evolve_args;
    double evolve_t = 1.0;
    std::string evolve_method = "exact";
    std::size_t evolve_steps = 64;
    CLI::App* evolve = app.add_subcommand("evolve", "Evolve with the exact oracle or Trotter splitting");
    evolve_args.attach(evolve);
    evolve->add_option("-t,--time", evolve_t, "Evolution time")->check(CLI::NonNegativeNumber);
    evolve->add_option("--method", evolve_method, "exact or trotter");
    evolve->add_option("--steps", evolve_steps, "Trotter steps")->check(CLI::PositiveNumber);

    ModelArgs kraus_args;
    double kraus_t = 1.0;
    std::string kraus_series = "auto";
    std::size_t kraus_order = 3;
    bool kraus_apply = false;
    bool kraus_check = false;
    CLI::App* kraus = app.add_subcommand("kraus", "Build (and apply) the Kraus series at one time");
    kraus_args.attach(kraus);
    kraus->add_option("-t,--time", kraus_t, "Evolution time")->check(CLI::NonNegativeNumber);
    kraus->add_option("--series", kraus_series, "auto, perturbative or reduced");
    kraus->add_option("--order", kraus_order, "Truncation order for the perturbative series");
    kraus->add_flag("--apply", kraus_apply, "Also apply the series to the initial state");
    kraus->add_flag("--check", kraus_check, "Compare against the exact oracle; exit 3 beyond the bound");

    ModelArgs circ_args;
    double circ_t = 1.0;
    std::string circ_series = "auto";
    std::size_t circ_order = 3;
    std::optional<std::size_t> circ_term;
    bool circ_group = false;
    std::string circ_scheme = "gray";
    CLI::App* circuit = app.add_subcommand("circuit", "Export Kraus-term circuits as JSON");
    circ_args.attach(circuit);
    circuit->add_option("-t,--time", circ_t, "Evolution time")->check(CLI::NonNegativeNumber);
    circuit->add_option("--series", circ_series, "auto, perturbative or reduced");
    circuit->add_option("--order", circ_order, "Truncation order for the perturbative series");
    circuit->add_option("--term", circ_term, "Only this term index");
    circuit->add_flag("--group", circ_group, "Single group circuit (abelian models)");
    circuit->add_option("--scheme", circ_scheme, "Diagonal encoding: gray or binary");

    std::string mit_states;
    std::string mit_method = "qdc";
    std::optional<double> mit_lambda;
    std::size_t mit_cal = 0;
    CLI::App* mitigate = app.add_subcommand("mitigate", "Fit and invert a noise channel on saved states");
    mitigate->add_option("states", mit_states, "states.json from an experiment run")
        ->required()
        ->check(CLI::ExistingFile);
    mitigate->add_option("--method", mit_method, "qdc or pauli-fit");
    mitigate->add_option("--lambda", mit_lambda, "Fixed QDC strength instead of fitting");
    mitigate->add_option("--calibration", mit_cal, "Record used as calibration pair");

    ExperimentArgs ex;
    CLI::App* experiment = app.add_subcommand("experiment", "Run a full trajectory and write reports");
    experiment->add_option("--config", ex.config_file, "Experiment JSON config")->check(CLI::ExistingFile);
    experiment->add_option("--preset", ex.preset, "Preset model key");
    experiment->add_option("--out", ex.out_dir, "Output directory");
    experiment->add_option("--format", ex.format, "csv or json trajectory table");
    experiment->add_flag("--check", ex.check, "Cross-check the Kraus matrix path against the oracle");
    experiment->add_option("--method", ex.method,
                           "exact, trotter, kraus-matrix, kraus-circuit-ideal, kraus-circuit-shots");
    experiment->add_option("--t-start", ex.t_start);
    experiment->add_option("--t-stop", ex.t_stop);
    experiment->add_option("--points", ex.points);
    experiment->add_option("--gamma", ex.gamma);
    experiment->add_option("--omega", ex.omega);
    experiment->add_option("--order", ex.order);
    experiment->add_option("--shots", ex.shots);
    experiment->add_option("--seed", ex.seed);
    experiment->add_option("--trotter-steps", ex.trotter_steps);
    experiment->add_option("--threads", ex.threads);
    experiment->add_option("--mitigation", ex.mitigation, "none, qdc, pauli-fit, twirl-qdc");
    experiment->add_option("--lambda", ex.lambda, "Fixed QDC strength");
    experiment->add_option("--noise", ex.depolarizing, "Synthetic depolarizing strength");
    experiment->add_flag("--fields", ex.fields, "Write phase-space grids");
    experiment->add_flag("--group-circuit", ex.group, "Use the group circuit for circuit methods");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand("presets")) return cmd_presets();
        if (check->parsed()) return cmd_check(check_args, strict);
        if (evolve->parsed()) return cmd_evolve(evolve_args, evolve_t, evolve_method, evolve_steps);
        if (kraus->parsed()) return cmd_kraus(kraus_args, kraus_t, kraus_series, kraus_order, kraus_apply, kraus_check);
        if (circuit->parsed())
            return cmd_circuit(circ_args, circ_t, circ_series, circ_order, circ_term, circ_group, circ_scheme);
        if (mitigate->parsed()) return cmd_mitigate(mit_states, mit_method, mit_lambda, mit_cal);
        if (experiment->parsed()) return cmd_experiment(ex);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
