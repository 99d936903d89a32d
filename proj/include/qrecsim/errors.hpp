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
#include <stdexcept>
#include <string>

namespace qrecsim {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent widths, indices or sizes handed to an operation.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A numeric precondition failed (non-unitary matrix, unnormalized state, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Post-selection on an outcome that has zero probability.
class ImpossibleBranchError : public Error {
  public:
    using Error::Error;
};

/// Input on which a statistic is undefined, e.g. every branch marked.
class DegenerateInputError : public Error {
  public:
    using Error::Error;
};

/// Malformed database CSV. `line()` is 1-based; 0 means the whole file.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// The c0 post-selection failed on every allowed attempt.
class RetryExhaustedError : public Error {
  public:
    RetryExhaustedError(double p_c0_zero, int attempts)
        : Error("c0 post-selection failed " + std::to_string(attempts) +
                " time(s); P(c0=0) = " + std::to_string(p_c0_zero)),
          p_c0_zero_(p_c0_zero), attempts_(attempts) {}

    [[nodiscard]] double p_c0_zero() const noexcept { return p_c0_zero_; }
    [[nodiscard]] int attempts() const noexcept { return attempts_; }
    /// Mean number of attempts until success, 1 / P(c0=0).
    [[nodiscard]] double expected_attempts() const noexcept { return 1.0 / p_c0_zero_; }

  private:
    double p_c0_zero_;
    int attempts_;
};

} // namespace qrecsim
