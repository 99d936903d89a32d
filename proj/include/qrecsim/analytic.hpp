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
#include <optional>
#include <vector>

#include "qrecsim/database.hpp"
#include "qrecsim/grover.hpp"

namespace qrecsim {

/**
 * Closed-form predictions for one (table, query, plan). All vectors are in
 * table order and are computed over the N record branches only; nothing of
 * size 2^n is built.
 */
struct AnalyticPrediction {
    std::vector<std::size_t> distances;
    /// (1/N) sum_p cos^2(pi d_p / (2l)).
    double p_c0_zero = 0.0;
    /// 1 / p_c0_zero; +inf when the stage can never succeed.
    double expected_attempts = 0.0;
    /// cos^2-weighted distribution after c0 = 0. Empty when p_c0_zero == 0.
    std::vector<double> conditional_knn;
    /// Distribution after `iterations` Grover iterations (equals conditional_knn without a plan).
    std::vector<double> post_grover;

    bool amplified = false;
    std::vector<BitString> marked_patterns;
    std::vector<std::size_t> marked;
    int iterations = 0;
    /// Marked probability after 1..max(iterations, window) iterations.
    std::vector<double> trajectory;
    /// From compute_biham_stats; empty without a plan, with g == 0 or with g == N.
    std::optional<double> p_max;
};

/// Normalised post-selection amplitudes cos(pi d_p/(2l)) / sqrt(sum cos^2); empty if all vanish.
Amplitudes knn_amplitudes(const DatabaseTable &table, const BitString &query);

AnalyticPrediction predict(const DatabaseTable &table, const UserQuery &query,
                           const std::optional<AmplificationPlan> &plan);

} // namespace qrecsim
