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
#include "qrecsim/bitstring.hpp"

#include <algorithm>

#include "qrecsim/errors.hpp"

namespace qrecsim {

BitString::BitString(std::string_view bits) : bits_(bits) {
    if (!std::all_of(bits_.begin(), bits_.end(), [](char c) { return c == '0' || c == '1'; })) {
        throw ConfigError("not a binary string: '" + bits_ + "'");
    }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
        throw ConfigError("value " + std::to_string(value) + " does not fit in " +
                          std::to_string(width) + " bits");
    }
    std::string s(width, '0');
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        if ((value >> i) & 1U) {
            s[width - 1 - i] = '1';
        }
    }
    return BitString(s);
}

std::uint64_t BitString::to_uint() const {
    if (bits_.size() > 64) {
        throw ConfigError("bit string wider than 64 bits");
    }
    std::uint64_t v = 0;
    for (char c : bits_) {
        v = (v << 1U) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

std::size_t BitString::popcount() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

BitString BitString::operator+(const BitString &rhs) const { return BitString(bits_ + rhs.bits_); }

std::size_t hamming_distance(const BitString &a, const BitString &b) {
    if (a.width() != b.width()) {
        throw ConfigError("hamming distance of words with widths " + std::to_string(a.width()) +
                          " and " + std::to_string(b.width()));
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.width(); ++i) {
        d += static_cast<std::size_t>(a[i] != b[i]);
    }
    return d;
}

} // namespace qrecsim
