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
#include "qrecsim/pipeline.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>

#include "qrecsim/circuit.hpp"
#include "qrecsim/errors.hpp"
#include "qrecsim/qknn.hpp"

namespace qrecsim {

namespace {

std::vector<std::size_t> measured_qubits(const RegisterLayout &layout) {
    auto out = layout.qubits(RegisterLayout::kId);
    const auto db = layout.qubits(RegisterLayout::kFeatureDb);
    out.insert(out.end(), db.begin(), db.end());
    return out;
}

/// Outcome value of the (id, feature_db) measurement for each record.
std::map<std::uint64_t, std::size_t> outcome_lookup(const DatabaseTable &table) {
    std::map<std::uint64_t, std::size_t> out;
    const auto l = table.feature_width();
    for (std::size_t i = 0; i < table.size(); ++i) {
        out.emplace((table[i].id.to_uint() << l) | table[i].feature.to_uint(), i);
    }
    return out;
}

StageReport make_stage(std::string name, const QuantumState &state, const DatabaseTable &table,
                       bool keep_state) {
    StageReport s{std::move(name), record_distribution(state, table), std::nullopt};
    if (keep_state) {
        s.state = state;
    }
    return s;
}

} // namespace

void RunConfig::validate() const {
    if (shots == 0) {
        throw ConfigError("shots must be at least 1");
    }
    if (max_attempts < 1) {
        throw ConfigError("max_attempts must be at least 1");
    }
}

StagedStates stage_states(const DatabaseTable &table, const UserQuery &query, SizePolicy policy) {
    check_query(table, query);
    const auto layout = layout_for(table);
    QuantumState psi2 = prepare_database_state(table, layout, policy);
    inject_user_feature(psi2, query);
    QuantumState psi5 = apply_hamming_stage(psi2);
    const double p0 = c0_zero_probability(psi5);
    if (p0 <= kImpossibleProbability) {
        throw RetryExhaustedError(p0, 0);
    }
    QuantumState post = psi5;
    const std::array<std::size_t, 1> c0{layout.c0()};
    postselect(post, c0, BitString("0"));
    apply_program(post, build_similarity_layer(layout));
    return StagedStates{std::move(psi2), std::move(psi5), std::move(post), p0};
}

std::vector<RecordProbability> record_distribution(const QuantumState &state,
                                                   const DatabaseTable &table) {
    const auto measured = measured_qubits(state.layout());
    const auto p = marginal_probabilities(state, measured);
    const auto l = table.feature_width();
    std::vector<RecordProbability> out;
    out.reserve(table.size());
    for (const auto &r : table.records()) {
        out.push_back({r.id, r.feature, p[(r.id.to_uint() << l) | r.feature.to_uint()]});
    }
    return out;
}

void rank(std::vector<RecordProbability> &records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const RecordProbability &a, const RecordProbability &b) {
                         if (a.p != b.p) {
                             return a.p > b.p;
                         }
                         return a.id < b.id;
                     });
}

RunOutcome run(const DatabaseTable &table, const UserQuery &query, const RunConfig &config) {
    config.validate();
    RunOutcome out;
    out.analytic = predict(table, query, config.amplification);

    const auto staged = stage_states(table, query, config.size_policy);
    const auto &layout = staged.prepared.layout();
    out.stage_reports.push_back(make_stage("post_init", staged.prepared, table, config.emit_stage_dumps));
    out.stage_reports.push_back(make_stage("post_knn", staged.post_knn, table, config.emit_stage_dumps));

    // Marked set and iteration count come from the exact k-NN distribution so that
    // ties resolve identically in the simulator and the closed form.
    QuantumState final_state = staged.post_knn;
    if (config.amplification) {
        out.marked_patterns = out.analytic.marked_patterns;
        out.iterations = out.analytic.iterations;
        auto amp = run_amplification(staged.post_knn, table, out.marked_patterns, out.iterations);
        if (amp.no_op) {
            out.warnings.push_back(amp.warning);
        }
        out.trajectory = std::move(amp.trajectory);
        final_state = std::move(amp.state);
        out.stage_reports.push_back(make_stage("post_grover", final_state, table, config.emit_stage_dumps));
    }

    out.c0.exact_p_zero = staged.p_c0_zero;
    if (config.exact) {
        out.c0.empirical_p_zero = staged.p_c0_zero;
        out.recommended = record_distribution(final_state, table);
        rank(out.recommended);
        return out;
    }

    const std::array<std::size_t, 1> c0{layout.c0()};
    const auto measured = measured_qubits(layout);
    const auto c0_marginal = marginal_probabilities(staged.unmeasured, c0);
    const auto final_marginal = marginal_probabilities(final_state, measured);
    const auto lookup = outcome_lookup(table);

    std::vector<std::uint64_t> counts(table.size(), 0);
    std::uint64_t measured_shots = 0;
    for (std::size_t shot = 0; shot < config.shots; ++shot) {
        Rng rng(config.seed + shot);
        std::uint64_t value = 0;
        if (config.simulate_each_shot) {
            std::optional<KnnOutcome> knn;
            try {
                knn.emplace(run_knn_with_retry(staged.prepared, config.max_attempts, rng));
            } catch (const RetryExhaustedError &e) {
                out.c0.failures += static_cast<std::uint64_t>(e.attempts());
                ++out.c0.exhausted_shots;
                continue;
            }
            out.c0.successes += 1;
            out.c0.failures += static_cast<std::uint64_t>(knn->attempts - 1);
            QuantumState state = std::move(knn->post_state);
            if (config.amplification) {
                state = run_amplification(std::move(state), table, out.marked_patterns, out.iterations).state;
            }
            value = measure_qubits(state, measured, rng).observed_bits.to_uint();
        } else {
            bool success = false;
            for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
                if (detail::sample_index(c0_marginal, rng.uniform()) == 0) {
                    success = true;
                    break;
                }
                ++out.c0.failures;
            }
            if (!success) {
                ++out.c0.exhausted_shots;
                continue;
            }
            out.c0.successes += 1;
            value = detail::sample_index(final_marginal, rng.uniform());
        }
        const auto it = lookup.find(value);
        if (it == lookup.end()) {
            throw ValidationError("measured a basis state outside the database");
        }
        ++counts[it->second];
        ++measured_shots;
    }
    if (measured_shots == 0) {
        throw RetryExhaustedError(staged.p_c0_zero, config.max_attempts);
    }
    const auto trials = out.c0.successes + out.c0.failures;
    out.c0.empirical_p_zero = static_cast<double>(out.c0.successes) / static_cast<double>(trials);
    for (std::size_t i = 0; i < table.size(); ++i) {
        out.recommended.push_back({table[i].id, table[i].feature,
                                   static_cast<double>(counts[i]) / static_cast<double>(measured_shots)});
    }
    rank(out.recommended);
    if (out.c0.exhausted_shots > 0) {
        out.warnings.push_back(std::to_string(out.c0.exhausted_shots) +
                               " shot(s) exhausted their c0 retries");
    }
    return out;
}

Reproduction reproduce_experiment(ExperimentCase which) {
    const auto table = bundled_table();
    Reproduction r;
    r.which = which;
    r.query = UserQuery{BitString(kBundledQuery)};
    AmplificationPlan plan;
    if (which == ExperimentCase::OneElement) {
        plan.marked = {r.query.feature};
        plan.policy = IterationPolicy::Auto;
    } else {
        plan.top_k = 2;
        plan.policy = IterationPolicy::Peak;
    }
    r.config.seed = 2018;
    r.config.shots = 10000;
    r.config.exact = true;
    r.config.amplification = plan;
    r.outcome = run(table, r.query, r.config);

    const auto staged = stage_states(table, r.query);
    const auto &marked = r.outcome.marked_patterns;
    const auto g = marked_branches(table, marked).size();
    const int horizon = std::max(r.outcome.iterations, iteration_window(table.size(), g));
    r.trajectory = run_amplification(staged.post_knn, table, marked, horizon).trajectory;
    r.after_first_iteration =
        record_distribution(run_amplification(staged.post_knn, table, marked, 1).state, table);
    return r;
}

} // namespace qrecsim
