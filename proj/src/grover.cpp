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
#include "qrecsim/grover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "qrecsim/circuit.hpp"
#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

std::vector<bool> marked_mask(std::size_t size, std::span<const std::size_t> marked) {
    std::vector<bool> mask(size, false);
    for (auto i : marked) {
        if (i >= size) {
            throw ConfigError("marked index " + std::to_string(i) + " out of range");
        }
        if (mask[i]) {
            throw ConfigError("marked index " + std::to_string(i) + " listed twice");
        }
        mask[i] = true;
    }
    return mask;
}

} // namespace

const char *policy_name(IterationPolicy policy) {
    switch (policy) {
    case IterationPolicy::Fixed:
        return "fixed";
    case IterationPolicy::Auto:
        return "auto";
    case IterationPolicy::Peak:
        return "peak";
    }
    return "?";
}

BihamStats compute_biham_stats(std::span<const std::complex<double>> amplitudes,
                               std::span<const std::size_t> marked) {
    if (marked.empty()) {
        throw ConfigError("Biham statistics need at least one marked branch");
    }
    const auto mask = marked_mask(amplitudes.size(), marked);
    const double total = static_cast<double>(amplitudes.size());
    const double g = static_cast<double>(marked.size());
    if (marked.size() == amplitudes.size()) {
        throw DegenerateInputError("every branch is marked; unmarked statistics are undefined");
    }
    const double ng = total - g;

    std::complex<double> sum_m(0), sum_u(0);
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        (mask[i] ? sum_m : sum_u) += amplitudes[i];
    }
    BihamStats s;
    s.mean_marked = sum_m / g;
    s.mean_unmarked = sum_u / ng;
    double var = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (!mask[i]) {
            var += std::norm(amplitudes[i] - s.mean_unmarked);
        }
    }
    s.var_unmarked = var / ng;
    const auto &km = s.mean_marked;
    const auto &lu = s.mean_unmarked;
    s.p_max = 1.0 - ng * s.var_unmarked - 0.5 * (ng * std::norm(lu) + g * std::norm(km)) +
              0.5 * std::abs(ng * lu * lu + g * km * km);
    return s;
}

Amplitudes exact_iteration_oracle(std::span<const std::complex<double>> amplitudes,
                                  std::span<const std::size_t> marked, int t) {
    const auto mask = marked_mask(amplitudes.size(), marked);
    Amplitudes a(amplitudes.begin(), amplitudes.end());
    if (a.empty()) {
        return a;
    }
    for (int step = 0; step < t; ++step) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (mask[i]) {
                a[i] = -a[i];
            }
        }
        const std::complex<double> mean =
            std::accumulate(a.begin(), a.end(), std::complex<double>(0)) / static_cast<double>(a.size());
        for (auto &v : a) {
            v = 2.0 * mean - v;
        }
    }
    return a;
}

double marked_probability(std::span<const std::complex<double>> amplitudes,
                          std::span<const std::size_t> marked) {
    double p = 0.0;
    for (auto i : marked) {
        p += std::norm(amplitudes[i]);
    }
    return p;
}

std::vector<double> exact_trajectory(std::span<const std::complex<double>> amplitudes,
                                     std::span<const std::size_t> marked, int t_max) {
    std::vector<double> out;
    Amplitudes a(amplitudes.begin(), amplitudes.end());
    for (int t = 0; t < t_max; ++t) {
        a = exact_iteration_oracle(a, marked, 1);
        out.push_back(marked_probability(a, marked));
    }
    return out;
}

int auto_iterations(std::size_t n, std::size_t g) {
    if (g == 0) {
        return 0;
    }
    return static_cast<int>(std::lround(std::numbers::pi / 4.0 *
                                        std::sqrt(static_cast<double>(n) / static_cast<double>(g))));
}

int iteration_window(std::size_t n, std::size_t g) {
    if (g == 0) {
        return 0;
    }
    return 2 * static_cast<int>(std::ceil(std::numbers::pi / 4.0 *
                                          std::sqrt(static_cast<double>(n) / static_cast<double>(g))));
}

int resolve_iterations(const AmplificationPlan &plan,
                       std::span<const std::complex<double>> amplitudes,
                       std::span<const std::size_t> marked) {
    switch (plan.policy) {
    case IterationPolicy::Fixed:
        if (plan.iterations < 0) {
            throw ConfigError("iteration count must be >= 0");
        }
        return plan.iterations;
    case IterationPolicy::Auto:
        return auto_iterations(amplitudes.size(), marked.size());
    case IterationPolicy::Peak: {
        if (marked.empty()) {
            return 0;
        }
        const auto traj = exact_trajectory(amplitudes, marked,
                                           iteration_window(amplitudes.size(), marked.size()));
        int best_t = 0;
        double best = marked_probability(amplitudes, marked);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            if (traj[i] > best) {
                best = traj[i];
                best_t = static_cast<int>(i) + 1;
            }
        }
        return best_t;
    }
    }
    return 0;
}

std::vector<std::size_t> marked_branches(const DatabaseTable &table,
                                         const std::vector<BitString> &patterns) {
    std::set<std::size_t> out;
    for (const auto &p : patterns) {
        if (p.width() != table.feature_width()) {
            throw ConfigError("marked pattern '" + p.str() + "' has width " + std::to_string(p.width()) +
                              ", features have width " + std::to_string(table.feature_width()));
        }
        for (auto i : table.matching(p)) {
            out.insert(i);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<BitString> top_k_features(const DatabaseTable &table,
                                      std::span<const double> probabilities, std::size_t k) {
    if (probabilities.size() != table.size()) {
        throw ConfigError("one probability per record expected");
    }
    std::vector<std::size_t> order(table.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (probabilities[a] != probabilities[b]) {
            return probabilities[a] > probabilities[b];
        }
        return table[a].id < table[b].id;
    });
    std::vector<BitString> out;
    for (auto i : order) {
        if (out.size() == k) {
            break;
        }
        if (std::find(out.begin(), out.end(), table[i].feature) == out.end()) {
            out.push_back(table[i].feature);
        }
    }
    return out;
}

std::vector<BitString> resolve_marked(const AmplificationPlan &plan, const DatabaseTable &table,
                                      const BitString &query, std::span<const double> knn_probabilities) {
    if (plan.top_k > 0) {
        return top_k_features(table, knn_probabilities, plan.top_k);
    }
    if (plan.marked.empty()) {
        return {query};
    }
    return plan.marked;
}

BitString definite_user_feature(const QuantumState &state) {
    const auto user = state.layout().qubits(RegisterLayout::kFeatureUser);
    const auto p = marginal_probabilities(state, user);
    const auto it = std::max_element(p.begin(), p.end());
    if (std::abs(*it - 1.0) > 1e-12) {
        throw ConfigError("user feature register is not a basis state");
    }
    return BitString::from_uint(static_cast<std::uint64_t>(it - p.begin()), user.size());
}

AmplificationResult run_amplification(QuantumState state, const DatabaseTable &table,
                                      const std::vector<BitString> &marked, int iterations) {
    if (iterations < 0) {
        throw ConfigError("iteration count must be >= 0");
    }
    const auto &layout = state.layout();
    if (!layout.is_recommender()) {
        throw ConfigError("amplification needs a recommender layout");
    }
    const std::array<std::size_t, 1> c0{layout.c0()};
    if (std::abs(marginal_probabilities(state, c0)[0] - 1.0) > 1e-12) {
        throw ConfigError("amplification expects the post-selected c0 = |0> state");
    }
    AmplificationResult result{state, {}, marked_branches(table, marked), false, {}};
    if (iterations == 0) {
        return result;
    }
    if (result.marked.empty()) {
        result.no_op = true;
        result.warning = "no record carries a marked pattern; amplification skipped";
        result.trajectory.assign(static_cast<std::size_t>(iterations), 0.0);
        return result;
    }
    const auto user = definite_user_feature(state);
    const auto program = build_grover_iteration(table, layout, marked);
    for (int t = 0; t < iterations; ++t) {
        apply_program(result.state, program);
        result.trajectory.push_back(
            marked_probability(branch_amplitudes(result.state, table, user), result.marked));
    }
    return result;
}

} // namespace qrecsim
