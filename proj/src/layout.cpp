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
#include "qrecsim/layout.hpp"

#include <algorithm>
#include <numeric>

#include "qrecsim/errors.hpp"

namespace qrecsim {

RegisterLayout::RegisterLayout(std::vector<Segment> segments) : segments_(std::move(segments)) {
    std::size_t next = 0;
    for (const auto &s : segments_) {
        if (s.start != next) {
            throw ConfigError("segment '" + s.name + "' starts at qubit " +
                              std::to_string(s.start) + ", expected " + std::to_string(next));
        }
        if (s.width == 0) {
            throw ConfigError("segment '" + s.name + "' has zero width");
        }
        if (std::count_if(segments_.begin(), segments_.end(),
                          [&](const Segment &o) { return o.name == s.name; }) != 1) {
            throw ConfigError("duplicate segment name '" + s.name + "'");
        }
        next += s.width;
    }
    num_qubits_ = next;
}

RegisterLayout RegisterLayout::flat(std::size_t num_qubits) {
    return RegisterLayout({{"q", 0, num_qubits}});
}

RegisterLayout RegisterLayout::recommender(std::size_t q, std::size_t l, std::size_t aux_width) {
    if (q == 0 || l == 0 || aux_width == 0) {
        throw ConfigError("recommender layout needs q >= 1, l >= 1 and at least one aux qubit");
    }
    return RegisterLayout({{kId, 0, q},
                           {kFeatureDb, q, l},
                           {kFeatureUser, q + l, l},
                           {kAux, q + 2 * l, aux_width}});
}

bool RegisterLayout::has(const std::string &name) const {
    return std::any_of(segments_.begin(), segments_.end(),
                       [&](const Segment &s) { return s.name == name; });
}

const Segment &RegisterLayout::segment(const std::string &name) const {
    auto it = std::find_if(segments_.begin(), segments_.end(),
                           [&](const Segment &s) { return s.name == name; });
    if (it == segments_.end()) {
        throw ConfigError("layout has no segment '" + name + "'");
    }
    return *it;
}

std::vector<std::size_t> RegisterLayout::qubits(const std::string &name) const {
    const auto &s = segment(name);
    std::vector<std::size_t> out(s.width);
    std::iota(out.begin(), out.end(), s.start);
    return out;
}

bool RegisterLayout::is_recommender() const {
    return has(kId) && has(kFeatureDb) && has(kFeatureUser) && has(kAux) &&
           segment(kFeatureDb).width == segment(kFeatureUser).width;
}

std::string RegisterLayout::ket(std::uint64_t index) const {
    std::string out;
    for (const auto &s : segments_) {
        if (!out.empty()) {
            out += '|';
        }
        for (std::size_t q = s.start; q < s.start + s.width; ++q) {
            out += ((index >> (num_qubits_ - 1 - q)) & 1U) ? '1' : '0';
        }
    }
    return out;
}

} // namespace qrecsim
