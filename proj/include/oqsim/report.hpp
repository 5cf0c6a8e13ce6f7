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

// Report files for trajectory runs. Layout under the output directory:
//   config.json      resolved experiment config
//   trajectory.csv   t, summary columns, observables (or trajectory.json)
//   states.json      raw / mitigated / oracle density matrices per step
//   fields/          phase-space grids per step (oscillator models only)

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "oqsim/analysis.hpp"
#include "oqsim/experiment.hpp"

namespace oqsim {

enum class ReportFormat { CSV, JSON };

/// Streaming writer: records are flushed as they arrive.
class ReportWriter {
  public:
    ReportWriter(std::filesystem::path dir, const ExperimentConfig& config, ModelPreset preset,
                 ReportFormat format = ReportFormat::CSV);
    ~ReportWriter();

    ReportWriter(const ReportWriter&) = delete;
    ReportWriter& operator=(const ReportWriter&) = delete;

    void write(const TrajectoryRecord& record);
    /// Closes the JSON arrays. Called by the destructor if omitted.
    void finish();

    std::size_t records_written() const { return count_; }

  private:
    void open(std::ofstream& stream, const std::filesystem::path& path);
    void write_fields(const TrajectoryRecord& record);

    std::filesystem::path dir_;
    ExperimentConfig config_;
    ModelPreset preset_;
    ReportFormat format_;
    std::ofstream table_;
    std::ofstream states_;
    std::vector<std::string> columns_;
    std::size_t count_ = 0;
    bool finished_ = false;
};

/// One-shot helper over a finished record list.
void emit_report(const std::vector<TrajectoryRecord>& records, const std::filesystem::path& dir,
                 const ExperimentConfig& config, ReportFormat format = ReportFormat::CSV);

/// Long-form CSV, one "x,p,value" row per grid point with p varying fastest.
std::string field_to_csv(const Field& field, const PhaseSpaceGrid& grid);

}  // namespace oqsim
