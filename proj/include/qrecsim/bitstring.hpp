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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace qrecsim {

/**
 * Fixed-width binary word. Character 0 is the most significant bit, so
 * `BitString("10").to_uint() == 2` and a printed ket reads left to right.
 */
class BitString {
  public:
    BitString() = default;

    /// Throws ConfigError on any character other than '0' / '1'.
    explicit BitString(std::string_view bits);

    /// `width` low bits of `value`, MSB first. Throws ConfigError if value does not fit.
    static BitString from_uint(std::uint64_t value, std::size_t width);

    [[nodiscard]] std::size_t width() const noexcept { return bits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] == '1'; }
    [[nodiscard]] std::uint64_t to_uint() const;
    [[nodiscard]] const std::string &str() const noexcept { return bits_; }
    [[nodiscard]] std::size_t popcount() const noexcept;
    [[nodiscard]] bool all_zero() const noexcept { return popcount() == 0; }

    /// Concatenation, `*this` on the left.
    [[nodiscard]] BitString operator+(const BitString &rhs) const;

    friend auto operator<=>(const BitString &, const BitString &) = default;
    friend bool operator==(const BitString &, const BitString &) = default;

  private:
    std::string bits_;
};

inline std::ostream &operator<<(std::ostream &os, const BitString &b) { return os << b.str(); }

/// Number of differing positions. Throws ConfigError on width mismatch.
[[nodiscard]] std::size_t hamming_distance(const BitString &a, const BitString &b);

} // namespace qrecsim
