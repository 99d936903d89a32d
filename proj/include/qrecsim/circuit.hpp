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
#include <ostream>
#include <string>
#include <vector>

#include "qrecsim/bitstring.hpp"
#include "qrecsim/database.hpp"
#include "qrecsim/gate.hpp"
#include "qrecsim/layout.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim {

enum class StageTag { Init, Knn, GroverIteration, Custom };

[[nodiscard]] const char *stage_name(StageTag tag);

/// Ordered gate list over a declared layout.
struct CircuitProgram {
    std::vector<GateOp> gates;
    StageTag stage = StageTag::Custom;
    RegisterLayout layout;

    [[nodiscard]] std::size_t size() const noexcept { return gates.size(); }
    /// Throws ConfigError if a gate leaves the layout or repeats a qubit.
    void validate() const;
};

/// Reversed order, every gate replaced by its adjoint.
CircuitProgram adjoint(const CircuitProgram &program);

/// Appends `tail` to `head`; layouts must agree.
CircuitProgram concat(CircuitProgram head, const CircuitProgram &tail);

template <typename Scalar>
void apply_program(BasicQuantumState<Scalar> &state, const CircuitProgram &program) {
    if (program.layout.num_qubits() != state.num_qubits()) {
        throw ConfigError("program declared for " + std::to_string(program.layout.num_qubits()) +
                          " qubits, state has " + std::to_string(state.num_qubits()));
    }
    for (const auto &g : program.gates) {
        apply_gate(state, g);
    }
}

template <typename Scalar>
BasicQuantumState<Scalar> applied(BasicQuantumState<Scalar> state, const CircuitProgram &program) {
    apply_program(state, program);
    return state;
}

/**
 * Database initialisation as gates: a uniform superposition over the table's
 * ids (an H layer when the ids fill the whole id register), one
 * id-controlled X per set feature bit, then X on each user qubit whose query
 * bit is 1. Applied to |0...0> it yields the same state as
 * prepare_database_state followed by inject_user_feature.
 */
CircuitProgram build_init_stage(const DatabaseTable &table, const UserQuery &query,
                                const RegisterLayout &layout);

/**
 * Hamming-distance phase accumulation, 3l + 2 gates:
 *   H(c0);
 *   X(db_k) controlled on user_k == 0   -> db_k = 1 iff r_k == t_k;
 *   P1(db_k), each adding e^{-i pi/(2l)} on a differing bit;
 *   P1^{-2}(db_k) controlled on c0 == 1, turning the c0=1 phase into e^{+i pi d/(2l)};
 *   H(c0).
 * On |Psi_2> the c0 = 0 branch of record p carries cos(pi d_p / (2l)) and the
 * c0 = 1 branch -i sin(pi d_p / (2l)).
 */
CircuitProgram build_hamming_stage(const RegisterLayout &layout);

/// The l user-controlled negations of the Hamming stage; self-inverse, restores r_k from d_k.
CircuitProgram build_similarity_layer(const RegisterLayout &layout);

/**
 * One Grover iteration over the record branches: phase-flip oracle on
 * feature_db for each marked pattern, then reflection about the mean of the
 * record amplitudes, realised as feature unload, id-register diffusion and
 * feature reload.
 */
CircuitProgram build_grover_iteration(const DatabaseTable &table, const RegisterLayout &layout,
                                      const std::vector<BitString> &marked);

struct GateCountReport {
    std::uint64_t l = 0;
    std::uint64_t n = 0;
    std::uint64_t c = 0;
    std::uint64_t o1 = 0; ///< 2l + N(N-1)/2, database initialisation
    std::uint64_t o2 = 0; ///< 3l + 2, Hamming stage
    std::uint64_t o3 = 0; ///< 7l + 2c + 3, one Grover iteration
};

/// Gates per decomposed multi-controlled negation when none is given: 2(l-1).
[[nodiscard]] std::uint64_t default_decomposition_constant(std::uint64_t l);

/// Throws ConfigError for l == 0 or n == 0.
GateCountReport estimate_gate_counts(std::uint64_t l, std::uint64_t n, std::uint64_t c);

/// One line per gate: `KIND t[,t] [ctrl=(q:b,...)] [theta=...]`, stage and layout as '#' comments.
void write_program_text(std::ostream &os, const CircuitProgram &program);
std::string to_text(const CircuitProgram &program);

} // namespace qrecsim
