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
#include <random>

namespace qrecsim {

/// Seeded 64-bit source behind every stochastic branch of a run.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform double in [0, 1) from the top 53 bits of one engine draw.
    /// Hand-rolled because std::uniform_real_distribution is not portable bit-for-bit.
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace qrecsim
