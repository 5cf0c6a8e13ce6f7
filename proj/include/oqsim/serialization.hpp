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

// JSON encodings. Complex numbers are [re, im] pairs and matrices are
// row-major nested arrays of those pairs.

#pragma once

#include <nlohmann/json.hpp>

#include "oqsim/circuits.hpp"
#include "oqsim/kraus.hpp"
#include "oqsim/lindblad.hpp"
#include "oqsim/matkernel.hpp"
#include "oqsim/mitigation.hpp"

namespace oqsim {

using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json model_to_json(const LindbladModel& model);
LindbladModel model_from_json(const json& j);

json conditions_to_json(const ConditionReport& report);

json series_to_json(const KrausSeries& series);
KrausSeries series_from_json(const json& j);

json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const json& j);

json shot_result_to_json(const ShotResult& result);
ShotResult shot_result_from_json(const json& j);

json channel_to_json(const PauliChannel& ch);
PauliChannel pauli_channel_from_json(const json& j);
json channel_to_json(const DepolarizingChannel& ch);
DepolarizingChannel depolarizing_channel_from_json(const json& j);

json fit_report_to_json(const PauliFitReport& report);
json fit_report_to_json(const LambdaFitReport& report);

}  // namespace oqsim
