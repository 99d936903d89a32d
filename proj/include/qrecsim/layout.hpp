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
#include <string>
#include <vector>

namespace qrecsim {

struct Segment {
    std::string name;
    std::size_t start = 0;
    std::size_t width = 0;

    friend bool operator==(const Segment &, const Segment &) = default;
};

/**
 * Named, contiguous qubit groups covering a register. Qubit 0 is the
 * leftmost ket position and the most significant bit of an amplitude index.
 */
class RegisterLayout {
  public:
    static constexpr const char *kId = "id";
    static constexpr const char *kFeatureDb = "feature_db";
    static constexpr const char *kFeatureUser = "feature_user";
    static constexpr const char *kAux = "aux";

    RegisterLayout() = default;

    /// Segments listed in qubit order; throws ConfigError if they leave gaps or overlap.
    explicit RegisterLayout(std::vector<Segment> segments);

    /// One anonymous segment "q" of width n.
    static RegisterLayout flat(std::size_t num_qubits);

    /// id(q) | feature_db(l) | feature_user(l) | aux(aux_width); c0 is the first aux qubit.
    static RegisterLayout recommender(std::size_t q, std::size_t l, std::size_t aux_width = 1);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<Segment> &segments() const noexcept { return segments_; }
    [[nodiscard]] bool has(const std::string &name) const;
    /// Throws ConfigError for an unknown name.
    [[nodiscard]] const Segment &segment(const std::string &name) const;
    [[nodiscard]] std::vector<std::size_t> qubits(const std::string &name) const;

    /// True for layouts built by `recommender` (all four groups, equal feature widths).
    [[nodiscard]] bool is_recommender() const;
    [[nodiscard]] std::size_t c0() const { return segment(kAux).start; }

    /// Ket of a basis index with segments separated by '|', e.g. "0011|101011|101011|0".
    [[nodiscard]] std::string ket(std::uint64_t index) const;

    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;

  private:
    std::vector<Segment> segments_;
    std::size_t num_qubits_ = 0;
};

} // namespace qrecsim
