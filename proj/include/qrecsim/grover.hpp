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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qrecsim/bitstring.hpp"
#include "qrecsim/database.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim {

using Amplitudes = std::vector<std::complex<double>>;

enum class IterationPolicy {
    Fixed, ///< exactly `iterations`
    Auto,  ///< round((pi/4) sqrt(N/g))
    Peak,  ///< first argmax of the exact trajectory over [0, 2 ceil((pi/4) sqrt(N/g))]
};

[[nodiscard]] const char *policy_name(IterationPolicy policy);

struct AmplificationPlan {
    /// Marked feature patterns; every record carrying one counts towards g.
    std::vector<BitString> marked;
    /// When nonzero, the marked set is the top-k distinct features of the k-NN distribution
    /// instead of `marked`.
    std::size_t top_k = 0;
    IterationPolicy policy = IterationPolicy::Auto;
    int iterations = 0;
};

/// Two-class amplitude statistics at t = 0 and the resulting P_max.
struct BihamStats {
    std::complex<double> mean_marked;
    std::complex<double> mean_unmarked;
    double var_unmarked = 0.0;
    double p_max = 0.0;
};

/**
 * Mean of the g marked amplitudes, mean and variance of the L - g unmarked
 * ones (both averaged over L - g), and
 *   P_max = 1 - (L-g) var - 1/2 ((L-g)|mean_u|^2 + g|mean_m|^2)
 *             + 1/2 |(L-g) mean_u^2 + g mean_m^2|.
 * Throws ConfigError for an empty or invalid marked set and
 * DegenerateInputError when every branch is marked.
 */
BihamStats compute_biham_stats(std::span<const std::complex<double>> amplitudes,
                               std::span<const std::size_t> marked);

/// Qubit-free Grover: t times (negate marked entries, a -> 2 mean(a) - a).
Amplitudes exact_iteration_oracle(std::span<const std::complex<double>> amplitudes,
                                  std::span<const std::size_t> marked, int t);

/// Marked probability after iterations 1..t_max of exact_iteration_oracle.
std::vector<double> exact_trajectory(std::span<const std::complex<double>> amplitudes,
                                     std::span<const std::size_t> marked, int t_max);

[[nodiscard]] double marked_probability(std::span<const std::complex<double>> amplitudes,
                                        std::span<const std::size_t> marked);

/// round((pi/4) sqrt(N/g)); 0 when g == 0.
[[nodiscard]] int auto_iterations(std::size_t n, std::size_t g);
/// 2 ceil((pi/4) sqrt(N/g)); 0 when g == 0.
[[nodiscard]] int iteration_window(std::size_t n, std::size_t g);

/// Iteration count selected by `plan` for the given branch amplitudes.
int resolve_iterations(const AmplificationPlan &plan,
                       std::span<const std::complex<double>> amplitudes,
                       std::span<const std::size_t> marked);

/// Record positions whose feature is one of `patterns`, ascending, each at most once.
std::vector<std::size_t> marked_branches(const DatabaseTable &table,
                                         const std::vector<BitString> &patterns);

/// The k most probable distinct features given per-record probabilities (table order);
/// ties go to the feature whose best record has the smaller id.
std::vector<BitString> top_k_features(const DatabaseTable &table,
                                      std::span<const double> probabilities, std::size_t k);

/// Patterns `plan` marks, given the k-NN conditional distribution (table order).
std::vector<BitString> resolve_marked(const AmplificationPlan &plan, const DatabaseTable &table,
                                      const BitString &query, std::span<const double> knn_probabilities);

struct AmplificationResult {
    QuantumState state;
    /// trajectory[i] = total marked probability after iteration i + 1.
    std::vector<double> trajectory;
    std::vector<std::size_t> marked;
    /// Set when no record carries a marked pattern; the state is then left untouched.
    bool no_op = false;
    std::string warning;
};

/// User feature held by the (definite) feature_user register of `state`.
BitString definite_user_feature(const QuantumState &state);

/**
 * Applies build_grover_iteration `iterations` times to a post-k-NN state
 * (c0 = |0>, feature register holding r_p).
 */
AmplificationResult run_amplification(QuantumState state, const DatabaseTable &table,
                                      const std::vector<BitString> &marked, int iterations);

} // namespace qrecsim
