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

#include "oqsim/serialization.hpp"

namespace oqsim {

namespace {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError("expected a complex number as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    return guarded("matrix", [&] {
        if (!j.is_array() || j.empty() || !j[0].is_array()) {
            throw ValidationError("matrix: expected a non-empty array of rows");
        }
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = static_cast<Eigen::Index>(j[0].size());
        Matrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const json& row = j[static_cast<std::size_t>(r)];
            if (static_cast<Eigen::Index>(row.size()) != cols) {
                throw ValidationError("matrix: ragged rows");
            }
            for (Eigen::Index c = 0; c < cols; ++c) {
                m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
            }
        }
        return m;
    });
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

Vector vector_from_json(const json& j) {
    return guarded("vector", [&] {
        if (!j.is_array() || j.empty()) {
            throw ValidationError("vector: expected a non-empty array");
        }
        Vector v(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
        }
        return v;
    });
}

json model_to_json(const LindbladModel& model) {
    json ls = json::array();
    for (const Matrix& l : model.lindblads) {
        ls.push_back(matrix_to_json(l));
    }
    return {{"dim", model.dim()},
            {"hamiltonian", matrix_to_json(model.hamiltonian)},
            {"lindblads", ls},
            {"gammas", model.gammas}};
}

LindbladModel model_from_json(const json& j) {
    return guarded("model", [&] {
        LindbladModel m;
        m.hamiltonian = matrix_from_json(j.at("hamiltonian"));
        for (const json& l : j.at("lindblads")) {
            m.lindblads.push_back(matrix_from_json(l));
        }
        m.gammas = j.at("gammas").get<std::vector<double>>();
        m.validate();
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != m.dim()) {
            throw ValidationError("model: dim does not match the hamiltonian");
        }
        return m;
    });
}

json conditions_to_json(const ConditionReport& r) {
    json nus = json::array();
    for (const cplx& v : r.per_operator_nu) {
        nus.push_back(complex_to_json(v));
    }
    json lambdas = json::array();
    for (const cplx& v : r.per_operator_lambda) {
        lambdas.push_back(complex_to_json(v));
    }
    return {{"satisfied", r.satisfied},
            {"residuals", r.residuals},
            {"all_satisfied", r.all_satisfied()},
            {"nu", complex_to_json(r.nu)},
            {"lambda", complex_to_json(r.lambda_const)},
            {"alpha", r.alpha},
            {"f_kind", r.f_kind == FKind::Linear ? "linear" : "saturating"},
            {"per_operator_nu", nus},
            {"per_operator_lambda", lambdas},
            {"shared_nu_near_miss", r.shared_nu_near_miss},
            {"failures", r.failure_summary()}};
}

json series_to_json(const KrausSeries& series) {
    json terms = json::array();
    for (const KrausTerm& t : series.terms) {
        terms.push_back({{"order", t.order},
                         {"k", t.indices},
                         {"weight", t.weight},
                         {"operator", matrix_to_json(t.op)}});
    }
    return {{"truncation_order", series.truncation_order},
            {"tail_bound", series.tail_bound},
            {"time", series.time},
            {"terms", terms}};
}

KrausSeries series_from_json(const json& j) {
    return guarded("series", [&] {
        KrausSeries s;
        s.truncation_order = j.at("truncation_order").get<std::size_t>();
        s.tail_bound = j.at("tail_bound").get<double>();
        s.time = j.value("time", 0.0);
        for (const json& t : j.at("terms")) {
            KrausTerm term;
            term.order = t.at("order").get<std::size_t>();
            term.indices = t.at("k").get<std::vector<std::size_t>>();
            term.weight = t.at("weight").get<double>();
            term.op = matrix_from_json(t.at("operator"));
            s.terms.push_back(std::move(term));
        }
        return s;
    });
}

json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const Gate& g : c.gates) {
        json controls = json::array();
        for (const Control& ctl : g.controls) {
            controls.push_back({{"qubit", ctl.qubit}, {"value", ctl.value}});
        }
        json jg = {{"kind", gate_kind_name(g.kind)},
                   {"targets", g.targets},
                   {"controls", controls},
                   {"angle", g.angle}};
        if (g.kind == GateKind::Unitary) {
            jg["matrix"] = matrix_to_json(g.matrix);
        }
        gates.push_back(std::move(jg));
    }
    return {{"num_system_qubits", c.num_system_qubits},
            {"num_ancilla_qubits", c.num_ancilla_qubits},
            {"postselect", c.postselect},
            {"global_phase", c.global_phase},
            {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
    return guarded("circuit", [&] {
        Circuit c;
        c.num_system_qubits = j.at("num_system_qubits").get<std::size_t>();
        c.num_ancilla_qubits = j.at("num_ancilla_qubits").get<std::size_t>();
        c.postselect = j.value("postselect", std::vector<std::size_t>{});
        c.global_phase = j.value("global_phase", 0.0);
        for (const json& jg : j.at("gates")) {
            Gate g;
            g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
            g.targets = jg.at("targets").get<std::vector<std::size_t>>();
            for (const json& ctl : jg.value("controls", json::array())) {
                g.controls.push_back({ctl.at("qubit").get<std::size_t>(), ctl.value("value", true)});
            }
            g.angle = jg.value("angle", 0.0);
            if (g.kind == GateKind::Unitary) {
                g.matrix = matrix_from_json(jg.at("matrix"));
            }
            c.gates.push_back(std::move(g));
        }
        c.validate();
        return c;
    });
}

json shot_result_to_json(const ShotResult& r) {
    json out = {{"basis", r.basis},
                {"accepted_fraction", r.accepted_fraction},
                {"shots", r.shots},
                {"exact", r.exact}};
    if (r.exact) {
        out["probabilities"] = r.probabilities;
    } else {
        out["counts"] = r.counts;
    }
    return out;
}

ShotResult shot_result_from_json(const json& j) {
    return guarded("shot result", [&] {
        ShotResult r;
        r.basis = j.at("basis").get<std::string>();
        r.accepted_fraction = j.at("accepted_fraction").get<double>();
        r.shots = j.value("shots", std::uint64_t{0});
        r.exact = j.value("exact", false);
        if (r.exact) {
            r.probabilities = j.at("probabilities").get<std::map<std::string, double>>();
        } else {
            r.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
        }
        if (!(r.accepted_fraction >= 0.0 && r.accepted_fraction <= 1.0)) {
            throw ValidationError("shot result: accepted_fraction must lie in [0, 1]");
        }
        return r;
    });
}

json channel_to_json(const PauliChannel& ch) {
    return {{"num_qubits", ch.num_qubits}, {"epsilons", ch.epsilons}};
}

PauliChannel pauli_channel_from_json(const json& j) {
    return guarded("pauli channel", [&] {
        PauliChannel ch;
        ch.num_qubits = j.at("num_qubits").get<std::size_t>();
        ch.epsilons = j.at("epsilons").get<std::vector<double>>();
        ch.validate();
        return ch;
    });
}

json channel_to_json(const DepolarizingChannel& ch) {
    return {{"num_qubits", ch.num_qubits}, {"lambda", ch.lambda}};
}

DepolarizingChannel depolarizing_channel_from_json(const json& j) {
    return guarded("depolarizing channel", [&] {
        DepolarizingChannel ch{j.at("num_qubits").get<std::size_t>(), j.at("lambda").get<double>()};
        ch.validate();
        return ch;
    });
}

json fit_report_to_json(const PauliFitReport& r) {
    return {{"channel", channel_to_json(r.channel)},
            {"raw_sum", r.raw_sum},
            {"iterations", r.iterations},
            {"kkt_residual", r.kkt_residual},
            {"converged", r.converged},
            {"final_objective", r.objective_history.empty() ? 0.0 : r.objective_history.back()}};
}

json fit_report_to_json(const LambdaFitReport& r) {
    json grid = json::array();
    for (const auto& [l, s] : r.grid) {
        grid.push_back({l, s});
    }
    return {{"lambda", r.lambda}, {"score", r.score}, {"grid", grid}};
}

}  // namespace oqsim
