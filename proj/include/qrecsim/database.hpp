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
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "qrecsim/bitstring.hpp"
#include "qrecsim/layout.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim {

struct DatabaseRecord {
    BitString id;
    BitString feature;

    friend bool operator==(const DatabaseRecord &, const DatabaseRecord &) = default;
};

/// Validated (id, feature) table: uniform widths, unique ids, 1 <= N <= 2^q.
class DatabaseTable {
  public:
    explicit DatabaseTable(std::vector<DatabaseRecord> records);

    [[nodiscard]] const std::vector<DatabaseRecord> &records() const noexcept { return records_; }
    [[nodiscard]] const DatabaseRecord &operator[](std::size_t i) const { return records_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] std::size_t id_width() const noexcept { return records_.front().id.width(); }
    [[nodiscard]] std::size_t feature_width() const noexcept {
        return records_.front().feature.width();
    }

    /// Positions of records whose feature equals `pattern`, table order.
    [[nodiscard]] std::vector<std::size_t> matching(const BitString &pattern) const;

    /// Record ids as integers, table order.
    [[nodiscard]] std::vector<std::uint64_t> id_values() const;

    /// "fnv1a64:<16 hex digits>" over the canonical `id,feature` lines.
    [[nodiscard]] std::string digest() const;

  private:
    std::vector<DatabaseRecord> records_;
};

struct UserQuery {
    BitString feature;
};

/**
 * Reads `id,feature` CSV. Lines starting with '#' and blank lines are
 * skipped. Ids are taken as binary when every id is a 0/1 string of one
 * common width; otherwise they are decimal and widened to
 * max(1, ceil(log2(max_id + 1))) bits.
 */
DatabaseTable parse_table(std::istream &in);
DatabaseTable parse_table(std::string_view text);
DatabaseTable load_table(const std::filesystem::path &path);

/// The bundled 16-record, 6-bit example (same content as data/bundled_table.csv).
std::string_view bundled_table_csv();
DatabaseTable bundled_table();
/// Query used with the bundled table.
inline constexpr std::string_view kBundledQuery = "101011";

/// Throws ConfigError unless `query` has the table's feature width.
void check_query(const DatabaseTable &table, const UserQuery &query);

/// id(q) | feature_db(l) | feature_user(l) | aux(1).
RegisterLayout layout_for(const DatabaseTable &table);

/// Basis index of |id>|feature>|user>|0...0>.
std::uint64_t branch_index(const RegisterLayout &layout, const DatabaseRecord &record,
                           const BitString &user_feature);

/// (1/sqrt N) sum_p |id_p>|r_p>|0..0>|0>, written directly into the amplitude vector.
QuantumState prepare_database_state(const DatabaseTable &table, const RegisterLayout &layout,
                                    SizePolicy policy = SizePolicy::Capped);

/// X on every user-feature qubit whose query bit is 1. Throws ConfigError if the
/// user segment is not |0...0> in every branch.
void inject_user_feature(QuantumState &state, const UserQuery &query);

/// Amplitude of each record branch |id_p>|r_p>|user>|aux>, table order.
std::vector<std::complex<double>> branch_amplitudes(const QuantumState &state,
                                                    const DatabaseTable &table,
                                                    const BitString &user_feature,
                                                    std::uint64_t aux_value = 0);

} // namespace qrecsim
