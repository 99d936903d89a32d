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
#include "qrecsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

// cos(pi d / 2l), exactly zero at d == l.
double knn_cos(std::size_t d, std::size_t l) {
    if (d == l) {
        return 0.0;
    }
    return std::cos(std::numbers::pi * static_cast<double>(d) / (2.0 * static_cast<double>(l)));
}

double knn_weight(std::size_t d, std::size_t l) {
    const double c = knn_cos(d, l);
    return c * c;
}

} // namespace

Amplitudes knn_amplitudes(const DatabaseTable &table, const BitString &query) {
    const auto l = table.feature_width();
    double total = 0.0;
    std::vector<double> c;
    for (const auto &r : table.records()) {
        const double w = knn_cos(hamming_distance(r.feature, query), l);
        c.push_back(w);
        total += w * w;
    }
    if (total <= 0.0) {
        return {};
    }
    Amplitudes out;
    const double norm = std::sqrt(total);
    for (double w : c) {
        out.emplace_back(w / norm, 0.0);
    }
    return out;
}

AnalyticPrediction predict(const DatabaseTable &table, const UserQuery &query,
                           const std::optional<AmplificationPlan> &plan) {
    check_query(table, query);
    AnalyticPrediction out;
    const auto l = table.feature_width();
    double sum = 0.0;
    for (const auto &r : table.records()) {
        const auto d = hamming_distance(r.feature, query.feature);
        out.distances.push_back(d);
        sum += knn_weight(d, l);
    }
    out.p_c0_zero = sum / static_cast<double>(table.size());
    out.expected_attempts =
        out.p_c0_zero > 0.0 ? 1.0 / out.p_c0_zero : std::numeric_limits<double>::infinity();

    const auto amps = knn_amplitudes(table, query.feature);
    if (amps.empty()) {
        return out;
    }
    for (const auto &a : amps) {
        out.conditional_knn.push_back(std::norm(a));
    }
    out.post_grover = out.conditional_knn;
    if (!plan) {
        return out;
    }

    out.amplified = true;
    out.marked_patterns = resolve_marked(*plan, table, query.feature, out.conditional_knn);
    out.marked = marked_branches(table, out.marked_patterns);
    out.iterations = resolve_iterations(*plan, amps, out.marked);
    if (out.marked.empty()) {
        return out;
    }
    const int horizon = std::max(out.iterations, iteration_window(table.size(), out.marked.size()));
    out.trajectory = exact_trajectory(amps, out.marked, horizon);
    const auto final_amps = exact_iteration_oracle(amps, out.marked, out.iterations);
    std::transform(final_amps.begin(), final_amps.end(), out.post_grover.begin(),
                   [](const auto &a) { return std::norm(a); });
    if (out.marked.size() < table.size()) {
        out.p_max = compute_biham_stats(amps, out.marked).p_max;
    }
    return out;
}

} // namespace qrecsim
