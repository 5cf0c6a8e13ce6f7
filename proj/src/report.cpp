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

#include "oqsim/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>
#include <system_error>

namespace oqsim {

namespace {

std::string num(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.17g}", v);
}

const std::vector<std::string> kSummaryColumns = {"t",       "fidelity",       "fidelity_raw",
                                                  "trace_distance", "entropy", "declared_bound"};

json record_json(const TrajectoryRecord& r) {
    json terms = json::array();
    for (const TermDiagnostic& d : r.terms) {
        terms.push_back({{"order", d.order}, {"k", d.indices}, {"weight", d.weight}, {"survival", d.survival}});
    }
    return {{"index", r.index},
            {"t", r.t},
            {"raw", matrix_to_json(r.raw.matrix())},
            {"raw_physical", !r.raw.is_raw()},
            {"mitigated", matrix_to_json(r.mitigated.matrix())},
            {"oracle", matrix_to_json(r.oracle.matrix())},
            {"terms", terms}};
}

}  // namespace

std::string field_to_csv(const Field& field, const PhaseSpaceGrid& grid) {
    if (field.rows() != grid.x.size() || field.cols() != grid.p.size()) {
        throw ValidationError("field_to_csv: field shape does not match the grid");
    }
    std::string out = "x,p,value\n";
    for (Eigen::Index i = 0; i < field.rows(); ++i) {
        for (Eigen::Index j = 0; j < field.cols(); ++j) {
            out += num(grid.x(i)) + "," + num(grid.p(j)) + "," + num(field(i, j)) + "\n";
        }
    }
    return out;
}

ReportWriter::ReportWriter(std::filesystem::path dir, const ExperimentConfig& config, ModelPreset preset,
                           ReportFormat format)
    : dir_(std::move(dir)), config_(config), preset_(std::move(preset)), format_(format) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw std::runtime_error(fmt::format("cannot create {}: {}", dir_.string(), ec.message()));
    }
    std::ofstream cfg;
    open(cfg, dir_ / "config.json");
    cfg << config_to_json(config_).dump(2) << "\n";

    open(table_, dir_ / (format_ == ReportFormat::CSV ? "trajectory.csv" : "trajectory.json"));
    if (format_ == ReportFormat::JSON) {
        table_ << "[";
    }
    if (config_.write_states) {
        open(states_, dir_ / "states.json");
        states_ << "[";
    }
    if (config_.write_fields && !preset_.mode_operators.empty()) {
        std::filesystem::create_directories(dir_ / "fields", ec);
        if (ec) {
            throw std::runtime_error(fmt::format("cannot create {}: {}", (dir_ / "fields").string(), ec.message()));
        }
    }
}

ReportWriter::~ReportWriter() {
    try {
        finish();
    } catch (...) {
    }
}

void ReportWriter::open(std::ofstream& stream, const std::filesystem::path& path) {
    stream.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
}

void ReportWriter::write(const TrajectoryRecord& r) {
    if (finished_) {
        throw std::logic_error("ReportWriter: write after finish");
    }
    const std::vector<double> summary = {r.t, r.fidelity, r.fidelity_raw, r.trace_distance, r.entropy,
                                         r.declared_bound};
    if (format_ == ReportFormat::CSV) {
        if (count_ == 0) {
            columns_ = kSummaryColumns;
            for (const auto& [name, value] : r.observables) {
                columns_.push_back(name);
            }
            table_ << fmt::format("{}\n", fmt::join(columns_, ","));
        }
        std::vector<std::string> cells;
        for (double v : summary) {
            cells.push_back(num(v));
        }
        for (const auto& [name, value] : r.observables) {
            cells.push_back(num(value));
        }
        table_ << fmt::format("{}\n", fmt::join(cells, ","));
    } else {
        json row = json::object();
        for (std::size_t i = 0; i < kSummaryColumns.size(); ++i) {
            row[kSummaryColumns[i]] = std::isinf(summary[i]) ? json(nullptr) : json(summary[i]);
        }
        json obs = json::object();
        for (const auto& [name, value] : r.observables) {
            obs[name] = value;
        }
        row["observables"] = obs;
        table_ << (count_ == 0 ? "\n" : ",\n") << row.dump();
    }
    if (config_.write_states) {
        states_ << (count_ == 0 ? "\n" : ",\n") << record_json(r).dump();
    }
    if (config_.write_fields && !preset_.mode_operators.empty()) {
        write_fields(r);
    }
    table_.flush();
    states_.flush();
    if (!table_ || (config_.write_states && !states_)) {
        throw std::runtime_error("write failed under " + dir_.string());
    }
    ++count_;
}

void ReportWriter::write_fields(const TrajectoryRecord& r) {
    const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(config_.field_half_width, config_.field_step);
    std::ofstream out;
    if (preset_.mode_operators.size() == 1) {
        open(out, dir_ / "fields" / fmt::format("wigner_{:04d}.csv", r.index));
        out << field_to_csv(wigner(r.mitigated, grid), grid);
    } else {
        const auto levels = static_cast<std::size_t>(std::lround(
            std::pow(static_cast<double>(r.mitigated.dim()), 1.0 / static_cast<double>(preset_.mode_operators.size()))));
        open(out, dir_ / "fields" / fmt::format("joint_position_{:04d}.csv", r.index));
        out << field_to_csv(joint_density(r.mitigated, levels, grid, DensityKind::Position), grid);
    }
    if (!out) {
        throw std::runtime_error("write failed under " + (dir_ / "fields").string());
    }
}

void ReportWriter::finish() {
    if (finished_) {
        return;
    }
    finished_ = true;
    if (format_ == ReportFormat::JSON) {
        table_ << "\n]\n";
    }
    if (config_.write_states) {
        states_ << "\n]\n";
    }
    table_.close();
    states_.close();
}

void emit_report(const std::vector<TrajectoryRecord>& records, const std::filesystem::path& dir,
                 const ExperimentConfig& config, ReportFormat format) {
    if (records.empty()) {
        throw ValidationError("emit_report: no records");
    }
    ReportWriter writer(dir, config, resolve_model(config), format);
    for (const TrajectoryRecord& r : records) {
        writer.write(r);
    }
    writer.finish();
}

}  // namespace oqsim
