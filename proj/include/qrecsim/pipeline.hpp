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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrecsim/analytic.hpp"
#include "qrecsim/database.hpp"
#include "qrecsim/grover.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim {

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t shots = 1000;
    int max_attempts = 32;
    std::optional<AmplificationPlan> amplification;
    bool emit_stage_dumps = false;
    /// Report exact distributions instead of sampling shots.
    bool exact = false;
    /// Run every shot on its own copy of the statevector instead of sampling cached marginals.
    /// Both paths consume the generator identically and give identical outcomes.
    bool simulate_each_shot = false;
    SizePolicy size_policy = SizePolicy::Capped;

    /// Throws ConfigError on shots == 0 or max_attempts < 1.
    void validate() const;
};

struct RecordProbability {
    BitString id;
    BitString feature;
    double p = 0.0;
};

struct StageReport {
    std::string name;
    /// One entry per record, table order; exact marginals of the stage state.
    std::vector<RecordProbability> distribution;
    /// Full state, kept only with `emit_stage_dumps`.
    std::optional<QuantumState> state;
};

struct C0Statistics {
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::uint64_t exhausted_shots = 0;
    double empirical_p_zero = 0.0;
    double exact_p_zero = 0.0;
};

struct RunOutcome {
    /// Probability descending, ties by ascending id. Empirical in sampling mode.
    std::vector<RecordProbability> recommended;
    /// post_init, post_knn and (with a plan) post_grover.
    std::vector<StageReport> stage_reports;
    C0Statistics c0;
    AnalyticPrediction analytic;
    std::vector<BitString> marked_patterns;
    int iterations = 0;
    /// Simulated marked probability after each iteration.
    std::vector<double> trajectory;
    std::vector<std::string> warnings;
};

/// States the pipeline derives once per run.
struct StagedStates {
    QuantumState prepared;  ///< |Psi_2>
    QuantumState unmeasured; ///< |psi_5>
    QuantumState post_knn;   ///< c0 = 0 branch, features restored
    double p_c0_zero = 0.0;
};

/// Throws RetryExhaustedError when P(c0 = 0) is zero.
StagedStates stage_states(const DatabaseTable &table, const UserQuery &query,
                          SizePolicy policy = SizePolicy::Capped);

/// Per-record probabilities of a recommender-layout state, table order.
std::vector<RecordProbability> record_distribution(const QuantumState &state,
                                                   const DatabaseTable &table);

/// Probability descending, ties by ascending id.
void rank(std::vector<RecordProbability> &records);

/**
 * Prepare, inject, k-NN with retry, optional amplification and final
 * measurement of (id, feature_db) for every shot. Shot i draws from
 * Rng(seed + i). Retry exhaustion is tallied per shot and only thrown when
 * every shot exhausts its attempts.
 */
RunOutcome run(const DatabaseTable &table, const UserQuery &query, const RunConfig &config);

enum class ExperimentCase { OneElement, TwoElement };

/// One-element or two-element amplification run on the bundled table.
struct Reproduction {
    ExperimentCase which = ExperimentCase::OneElement;
    UserQuery query;
    RunConfig config;
    RunOutcome outcome;
    /// Post-Grover distribution after a single iteration.
    std::vector<RecordProbability> after_first_iteration;
    /// Simulated marked probability for t = 1 .. max(iterations, window).
    std::vector<double> trajectory;
};

/// One element: exact-match feature marked, auto iterations. Two elements: top-2 k-NN features
/// marked, iterations at the trajectory peak.
Reproduction reproduce_experiment(ExperimentCase which);

} // namespace qrecsim
