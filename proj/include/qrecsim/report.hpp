// Copyright 2026 The qrecsim Authors.
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
#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrecsim/analytic.hpp"
#include "qrecsim/circuit.hpp"
#include "qrecsim/pipeline.hpp"

namespace qrecsim {

using Json = nlohmann::ordered_json;

Json to_json(const std::vector<RecordProbability> &distribution);
Json plan_to_json(const std::optional<AmplificationPlan> &plan);

/// Pipeline report: source, config, table_digest, stages, c0, recommended, analytic, p_max, ...
Json pipeline_report(const DatabaseTable &table, const UserQuery &query, const RunConfig &config,
                     const RunOutcome &outcome);

/// Same schema with "source": "analytic"; distributions are exact.
Json analytic_report(const DatabaseTable &table, const UserQuery &query,
                     const std::optional<AmplificationPlan> &plan, const AnalyticPrediction &prediction);

/// Body of the "analytic" field.
Json analytic_summary(const DatabaseTable &table, const AnalyticPrediction &prediction);

/// {"o1":..,"o2":..,"o3":..}
Json gatecount_report(const GateCountReport &counts);

/// `id,feature,p` rows.
void write_distribution_csv(std::ostream &os, const std::vector<RecordProbability> &distribution);
/// `t,marked_probability` rows, starting with t = 0 at `initial`.
void write_trajectory_csv(std::ostream &os, double initial, std::span<const double> trajectory);

} // namespace qrecsim
