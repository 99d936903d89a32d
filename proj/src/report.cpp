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
#include "qrecsim/report.hpp"

#include <cmath>
#include <iomanip>

namespace qrecsim {

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json patterns(const std::vector<BitString> &ps) {
    Json a = Json::array();
    for (const auto &p : ps) {
        a.push_back(p.str());
    }
    return a;
}

std::vector<RecordProbability> with_probabilities(const DatabaseTable &table,
                                                  const std::vector<double> &p) {
    std::vector<RecordProbability> out;
    for (std::size_t i = 0; i < table.size() && i < p.size(); ++i) {
        out.push_back({table[i].id, table[i].feature, p[i]});
    }
    return out;
}

Json stage(const std::string &name, const std::vector<RecordProbability> &d) {
    Json s;
    s["name"] = name;
    s["distribution"] = to_json(d);
    return s;
}

} // namespace

Json to_json(const std::vector<RecordProbability> &distribution) {
    Json a = Json::array();
    for (const auto &r : distribution) {
        Json e;
        e["id"] = r.id.str();
        e["feature"] = r.feature.str();
        e["p"] = r.p;
        a.push_back(std::move(e));
    }
    return a;
}

Json plan_to_json(const std::optional<AmplificationPlan> &plan) {
    if (!plan) {
        return nullptr;
    }
    Json j;
    j["marked"] = patterns(plan->marked);
    j["top_k"] = plan->top_k;
    j["policy"] = policy_name(plan->policy);
    if (plan->policy == IterationPolicy::Fixed) {
        j["iterations"] = plan->iterations;
    }
    return j;
}

Json analytic_summary(const DatabaseTable &table, const AnalyticPrediction &prediction) {
    Json j;
    j["p_c0_zero"] = prediction.p_c0_zero;
    j["expected_attempts"] = finite_or_null(prediction.expected_attempts);
    j["distances"] = prediction.distances;
    j["conditional_knn"] = to_json(with_probabilities(table, prediction.conditional_knn));
    j["post_grover"] = to_json(with_probabilities(table, prediction.post_grover));
    j["marked"] = patterns(prediction.marked_patterns);
    j["g"] = prediction.marked.size();
    j["iterations"] = prediction.iterations;
    j["trajectory"] = prediction.trajectory;
    j["p_max"] = prediction.p_max ? Json(*prediction.p_max) : Json(nullptr);
    return j;
}

Json pipeline_report(const DatabaseTable &table, const UserQuery &query, const RunConfig &config,
                     const RunOutcome &outcome) {
    Json j;
    j["source"] = "pipeline";
    Json cfg;
    cfg["seed"] = config.seed;
    cfg["shots"] = config.shots;
    cfg["max_attempts"] = config.max_attempts;
    cfg["exact"] = config.exact;
    cfg["query"] = query.feature.str();
    cfg["amplification"] = plan_to_json(config.amplification);
    j["config"] = std::move(cfg);
    j["table_digest"] = table.digest();
    Json stages = Json::array();
    for (const auto &s : outcome.stage_reports) {
        stages.push_back(stage(s.name, s.distribution));
    }
    j["stages"] = std::move(stages);
    Json c0;
    c0["successes"] = outcome.c0.successes;
    c0["failures"] = outcome.c0.failures;
    c0["exhausted_shots"] = outcome.c0.exhausted_shots;
    c0["empirical_p_zero"] = outcome.c0.empirical_p_zero;
    c0["p_zero"] = outcome.c0.exact_p_zero;
    j["c0"] = std::move(c0);
    j["recommended"] = to_json(outcome.recommended);
    j["analytic"] = analytic_summary(table, outcome.analytic);
    j["p_max"] = outcome.analytic.p_max ? Json(*outcome.analytic.p_max) : Json(nullptr);
    Json amp;
    amp["marked"] = patterns(outcome.marked_patterns);
    amp["iterations"] = outcome.iterations;
    amp["trajectory"] = outcome.trajectory;
    j["amplification"] = config.amplification ? amp : Json(nullptr);
    j["warnings"] = outcome.warnings;
    return j;
}

Json analytic_report(const DatabaseTable &table, const UserQuery &query,
                     const std::optional<AmplificationPlan> &plan, const AnalyticPrediction &prediction) {
    Json j;
    j["source"] = "analytic";
    Json cfg;
    cfg["query"] = query.feature.str();
    cfg["amplification"] = plan_to_json(plan);
    j["config"] = std::move(cfg);
    j["table_digest"] = table.digest();

    Json stages = Json::array();
    std::vector<double> uniform(table.size(), 1.0 / static_cast<double>(table.size()));
    stages.push_back(stage("post_init", with_probabilities(table, uniform)));
    if (!prediction.conditional_knn.empty()) {
        stages.push_back(stage("post_knn", with_probabilities(table, prediction.conditional_knn)));
        if (prediction.amplified) {
            stages.push_back(stage("post_grover", with_probabilities(table, prediction.post_grover)));
        }
    }
    j["stages"] = std::move(stages);
    Json c0;
    c0["p_zero"] = prediction.p_c0_zero;
    c0["expected_attempts"] = finite_or_null(prediction.expected_attempts);
    j["c0"] = std::move(c0);
    auto ranked = with_probabilities(table, prediction.post_grover);
    rank(ranked);
    j["recommended"] = to_json(ranked);
    j["analytic"] = analytic_summary(table, prediction);
    j["p_max"] = prediction.p_max ? Json(*prediction.p_max) : Json(nullptr);
    return j;
}

Json gatecount_report(const GateCountReport &counts) {
    Json j;
    j["o1"] = counts.o1;
    j["o2"] = counts.o2;
    j["o3"] = counts.o3;
    return j;
}

void write_distribution_csv(std::ostream &os, const std::vector<RecordProbability> &distribution) {
    const auto old = os.precision(17);
    os << "id,feature,p\n";
    for (const auto &r : distribution) {
        os << r.id << ',' << r.feature << ',' << r.p << '\n';
    }
    os.precision(old);
}

void write_trajectory_csv(std::ostream &os, double initial, std::span<const double> trajectory) {
    const auto old = os.precision(17);
    os << "t,marked_probability\n0," << initial << '\n';
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        os << i + 1 << ',' << trajectory[i] << '\n';
    }
    os.precision(old);
}

} // namespace qrecsim
