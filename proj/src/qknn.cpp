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
#include "qrecsim/qknn.hpp"

#include <array>
#include <cmath>

#include "qrecsim/circuit.hpp"
#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

constexpr double kRestoreTolerance = 1e-10;

} // namespace

void check_knn_input(const QuantumState &psi2) {
    const auto &layout = psi2.layout();
    if (!layout.is_recommender()) {
        throw ConfigError("k-NN stage needs a recommender layout");
    }
    const std::array<std::size_t, 1> c0{layout.c0()};
    if (std::abs(marginal_probabilities(psi2, c0)[0] - 1.0) > 1e-12) {
        throw ConfigError("k-NN stage expects c0 = |0> before the stage");
    }
    const auto user = layout.qubits(RegisterLayout::kFeatureUser);
    const auto p = marginal_probabilities(psi2, user);
    for (double v : p) {
        if (v > 1e-12 && std::abs(v - 1.0) > 1e-12) {
            throw ConfigError("user feature register is not a basis state");
        }
    }
}

QuantumState apply_hamming_stage(QuantumState psi2) {
    check_knn_input(psi2);
    apply_program(psi2, build_hamming_stage(psi2.layout()));
    return psi2;
}

double c0_zero_probability(const QuantumState &psi5) {
    const std::array<std::size_t, 1> c0{psi5.layout().c0()};
    return marginal_probabilities(psi5, c0)[0];
}

KnnOutcome run_knn_stage(const QuantumState &psi2, Rng &rng) {
    QuantumState state = apply_hamming_stage(psi2);
    const double p0 = c0_zero_probability(state);
    const std::array<std::size_t, 1> c0{state.layout().c0()};
    const auto record = measure_qubits(state, c0, rng);
    const int bit = record.observed_bits[0] ? 1 : 0;
    if (bit == 0) {
        apply_program(state, build_similarity_layer(state.layout()));
    }
    return KnnOutcome{bit, p0, std::move(state), 1, psi2, 1.0};
}

KnnOutcome run_knn_stage(const QuantumState &psi2, std::uint64_t seed) {
    Rng rng(seed);
    return run_knn_stage(psi2, rng);
}

double uncompute_fidelity(const QuantumState &psi2) {
    const auto program = build_hamming_stage(psi2.layout());
    QuantumState state = psi2;
    apply_program(state, program);
    apply_program(state, adjoint(program));
    return fidelity(state, psi2);
}

KnnOutcome uncompute_and_retry(KnnOutcome failed, int max_attempts, Rng &rng) {
    if (failed.c0_bit != 1) {
        throw ConfigError("uncompute_and_retry called on a successful outcome");
    }
    // The measured branch cannot be un-measured; verify that U^dagger restores the
    // unmeasured register, then continue from the retained |Psi_2>.
    const double f = uncompute_fidelity(failed.prepared);
    if (f < 1.0 - kRestoreTolerance) {
        throw ValidationError("adjoint stage restored |Psi_2> with fidelity " + std::to_string(f));
    }
    int attempts = failed.attempts;
    while (attempts < max_attempts) {
        KnnOutcome next = run_knn_stage(failed.prepared, rng);
        ++attempts;
        if (next.c0_bit == 0) {
            next.attempts = attempts;
            next.restore_fidelity = f;
            return next;
        }
    }
    throw RetryExhaustedError(failed.p_c0_zero, attempts);
}

KnnOutcome uncompute_and_retry(KnnOutcome failed, int max_attempts, std::uint64_t seed) {
    Rng rng(seed);
    return uncompute_and_retry(std::move(failed), max_attempts, rng);
}

KnnOutcome run_knn_with_retry(const QuantumState &psi2, int max_attempts, Rng &rng) {
    if (max_attempts < 1) {
        throw ConfigError("max_attempts must be at least 1");
    }
    KnnOutcome first = run_knn_stage(psi2, rng);
    if (first.c0_bit == 0) {
        return first;
    }
    return uncompute_and_retry(std::move(first), max_attempts, rng);
}

double repetitions_estimate(double p, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    if (p < 0.0 || p > 1.0) {
        throw ConfigError("probability outside [0, 1]");
    }
    return p * (1.0 - p) / (epsilon * epsilon);
}

} // namespace qrecsim
