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

#include <cstdint>

#include "qrecsim/rng.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim {

/// Result of the k-NN stage and its c0 post-selection.
struct KnnOutcome {
    int c0_bit = 1;
    /// Exact P(c0 = 0) of the unmeasured stage output.
    double p_c0_zero = 0.0;
    /// After c0 = 0 the feature register is restored to r_p, so branches read |id>|r>|t>|0>
    /// with amplitudes proportional to cos(pi d / (2l)). After c0 = 1 it holds the collapsed
    /// state with the similarity bits still in place.
    QuantumState post_state;
    int attempts = 1;
    /// |Psi_2>, kept so a failed attempt can be repeated without rebuilding the database.
    QuantumState prepared;
    /// Fidelity of U^dagger U |Psi_2> against |Psi_2>, set once a retry has verified it.
    double restore_fidelity = 1.0;
};

/// Throws ConfigError unless `psi2` is a recommender-layout state with c0 = |0> and a
/// definite user feature.
void check_knn_input(const QuantumState &psi2);

/// The unmeasured stage output |psi_5>.
QuantumState apply_hamming_stage(QuantumState psi2);

/// P(c0 = 0) of `psi5`.
double c0_zero_probability(const QuantumState &psi5);

/// Applies the Hamming stage to a copy of `psi2` and measures c0 (one attempt).
KnnOutcome run_knn_stage(const QuantumState &psi2, Rng &rng);
KnnOutcome run_knn_stage(const QuantumState &psi2, std::uint64_t seed);

/**
 * Step after a c0 = 1 outcome: checks that the adjoint stage program maps the
 * unmeasured stage output back onto |Psi_2> (fidelity >= 1 - 1e-10), then
 * repeats the stage from the retained |Psi_2> until c0 = 0. `attempts` keeps
 * counting from the failed outcome; reaching `max_attempts` throws
 * RetryExhaustedError.
 */
KnnOutcome uncompute_and_retry(KnnOutcome failed, int max_attempts, Rng &rng);
KnnOutcome uncompute_and_retry(KnnOutcome failed, int max_attempts, std::uint64_t seed);

/// run_knn_stage followed, if needed, by uncompute_and_retry on the same generator.
KnnOutcome run_knn_with_retry(const QuantumState &psi2, int max_attempts, Rng &rng);

/// |<Psi_2| U^dagger U |Psi_2>|^2 with U the Hamming stage program.
double uncompute_fidelity(const QuantumState &psi2);

/// p (1 - p) / eps^2 repetitions to resolve a probability p to accuracy eps.
double repetitions_estimate(double p, double epsilon);

} // namespace qrecsim
