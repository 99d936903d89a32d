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
#include "qrecsim/database.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

constexpr std::string_view kBundledCsv = R"(# 16-record example database, 6-bit features.
# Query 101011: id 1010 is the exact match, id 0011 sits at Hamming distance 1,
# every other record at distance 3.
id,feature
0000,000001
0001,000010
0010,000111
0011,101111
0100,001000
0101,001101
0110,001110
0111,010011
1000,011001
1001,011010
1010,101011
1011,011111
1100,100000
1101,100101
1110,100110
1111,101100
)";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool is_binary(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

struct RawRow {
    std::size_t line;
    std::string id;
    std::string feature;
};

std::size_t bits_for(std::uint64_t max_value) {
    std::size_t w = 1;
    while (w < 64 && (max_value >> w) != 0) {
        ++w;
    }
    return w;
}

} // namespace

DatabaseTable::DatabaseTable(std::vector<DatabaseRecord> records) : records_(std::move(records)) {
    if (records_.empty()) {
        throw ConfigError("database table needs at least one record");
    }
    const auto q = records_.front().id.width();
    const auto l = records_.front().feature.width();
    if (q == 0 || l == 0) {
        throw ConfigError("id and feature widths must be at least 1");
    }
    std::map<BitString, std::size_t> seen;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto &r = records_[i];
        if (r.id.width() != q || r.feature.width() != l) {
            throw ConfigError("record " + std::to_string(i) + " has widths (" +
                              std::to_string(r.id.width()) + ", " +
                              std::to_string(r.feature.width()) + "), table uses (" +
                              std::to_string(q) + ", " + std::to_string(l) + ")");
        }
        if (!seen.emplace(r.id, i).second) {
            throw ConfigError("duplicate id " + r.id.str());
        }
    }
    if (q < 64 && records_.size() > (std::uint64_t{1} << q)) {
        throw ConfigError("more records than distinct ids of width " + std::to_string(q));
    }
}

std::vector<std::size_t> DatabaseTable::matching(const BitString &pattern) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].feature == pattern) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::uint64_t> DatabaseTable::id_values() const {
    std::vector<std::uint64_t> out;
    out.reserve(records_.size());
    for (const auto &r : records_) {
        out.push_back(r.id.to_uint());
    }
    return out;
}

std::string DatabaseTable::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto &r : records_) {
        feed(r.id.str());
        feed(",");
        feed(r.feature.str());
        feed("\n");
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

DatabaseTable parse_table(std::istream &in) {
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<RawRow> rows;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!have_header) {
            if (line != "id,feature") {
                throw ParseError(line_no, "expected header 'id,feature', got '" + std::string(line) + "'");
            }
            have_header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError(line_no, "expected 2 fields 'id,feature'");
        }
        RawRow row{line_no, std::string(trim(line.substr(0, comma))),
                   std::string(trim(line.substr(comma + 1)))};
        if (row.id.empty()) {
            throw ParseError(line_no, "empty id");
        }
        if (row.feature.empty()) {
            throw ParseError(line_no, "empty feature");
        }
        if (!is_binary(row.feature)) {
            throw ParseError(line_no, "feature '" + row.feature + "' has non-binary characters");
        }
        if (!rows.empty() && row.feature.size() != rows.front().feature.size()) {
            throw ParseError(line_no, "feature width " + std::to_string(row.feature.size()) +
                                          " differs from width " +
                                          std::to_string(rows.front().feature.size()) +
                                          " on line " + std::to_string(rows.front().line));
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw ParseError(0, "empty table: missing header 'id,feature'");
    }
    if (rows.empty()) {
        throw ParseError(0, "empty table: no records");
    }

    const bool binary_ids = std::all_of(rows.begin(), rows.end(), [&](const RawRow &r) {
        return is_binary(r.id) && r.id.size() == rows.front().id.size();
    });
    std::vector<std::uint64_t> values;
    values.reserve(rows.size());
    std::size_t q = 0;
    if (binary_ids) {
        q = rows.front().id.size();
        if (q > 63) {
            throw ParseError(rows.front().line, "binary id wider than 63 bits");
        }
        for (const auto &r : rows) {
            values.push_back(BitString(r.id).to_uint());
        }
    } else {
        std::uint64_t max_id = 0;
        for (const auto &r : rows) {
            std::uint64_t v = 0;
            const auto *end = r.id.data() + r.id.size();
            const auto [ptr, ec] = std::from_chars(r.id.data(), end, v);
            if (ec != std::errc{} || ptr != end) {
                throw ParseError(r.line, "id '" + r.id + "' is neither a binary string nor a decimal integer");
            }
            if (v >= (std::uint64_t{1} << 62)) {
                throw ParseError(r.line, "id '" + r.id + "' is too large");
            }
            values.push_back(v);
            max_id = std::max(max_id, v);
        }
        q = bits_for(max_id);
    }

    std::map<std::uint64_t, std::size_t> first_seen;
    std::vector<DatabaseRecord> records;
    records.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [it, inserted] = first_seen.emplace(values[i], rows[i].line);
        if (!inserted) {
            throw ParseError(rows[i].line, "duplicate id '" + rows[i].id + "' (first seen on line " +
                                               std::to_string(it->second) + ")");
        }
        records.push_back({BitString::from_uint(values[i], q), BitString(rows[i].feature)});
    }
    return DatabaseTable(std::move(records));
}

DatabaseTable parse_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_table(in);
}

DatabaseTable load_table(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open '" + path.string() + "'");
    }
    return parse_table(in);
}

std::string_view bundled_table_csv() { return kBundledCsv; }

DatabaseTable bundled_table() { return parse_table(kBundledCsv); }

void check_query(const DatabaseTable &table, const UserQuery &query) {
    if (query.feature.width() != table.feature_width()) {
        throw ConfigError("query feature has width " + std::to_string(query.feature.width()) +
                          ", table features have width " + std::to_string(table.feature_width()));
    }
}

RegisterLayout layout_for(const DatabaseTable &table) {
    return RegisterLayout::recommender(table.id_width(), table.feature_width());
}

std::uint64_t branch_index(const RegisterLayout &layout, const DatabaseRecord &record,
                           const BitString &user_feature) {
    const auto &aux = layout.segment(RegisterLayout::kAux);
    if (record.id.width() != layout.segment(RegisterLayout::kId).width ||
        record.feature.width() != layout.segment(RegisterLayout::kFeatureDb).width ||
        user_feature.width() != layout.segment(RegisterLayout::kFeatureUser).width) {
        throw ConfigError("record widths do not match the register layout");
    }
    const BitString ket = record.id + record.feature + user_feature + BitString(std::string(aux.width, '0'));
    return ket.to_uint();
}

QuantumState prepare_database_state(const DatabaseTable &table, const RegisterLayout &layout,
                                    SizePolicy policy) {
    if (!layout.is_recommender() || layout.segment(RegisterLayout::kId).width != table.id_width() ||
        layout.segment(RegisterLayout::kFeatureDb).width != table.feature_width()) {
        throw ConfigError("layout does not match table widths (q=" + std::to_string(table.id_width()) +
                          ", l=" + std::to_string(table.feature_width()) + ")");
    }
    QuantumState state(layout, policy);
    auto &a = state.mutable_amplitudes();
    a.setZero();
    const double amp = 1.0 / std::sqrt(static_cast<double>(table.size()));
    const BitString zeros(std::string(table.feature_width(), '0'));
    for (const auto &r : table.records()) {
        a(static_cast<Eigen::Index>(branch_index(layout, r, zeros))) = amp;
    }
    return state;
}

void inject_user_feature(QuantumState &state, const UserQuery &query) {
    const auto &layout = state.layout();
    const auto user = layout.qubits(RegisterLayout::kFeatureUser);
    if (query.feature.width() != user.size()) {
        throw ConfigError("query width " + std::to_string(query.feature.width()) +
                          " does not match the user register width " + std::to_string(user.size()));
    }
    const auto marginal = marginal_probabilities(state, user);
    if (std::abs(marginal.front() - 1.0) > 1e-12) {
        throw ConfigError("user feature register is not |0...0>; feature already injected?");
    }
    for (std::size_t k = 0; k < user.size(); ++k) {
        if (query.feature[k]) {
            apply_gate(state, x(user[k]));
        }
    }
}

std::vector<std::complex<double>> branch_amplitudes(const QuantumState &state,
                                                    const DatabaseTable &table,
                                                    const BitString &user_feature,
                                                    std::uint64_t aux_value) {
    std::vector<std::complex<double>> out;
    out.reserve(table.size());
    for (const auto &r : table.records()) {
        out.push_back(state.amplitude(branch_index(state.layout(), r, user_feature) | aux_value));
    }
    return out;
}

} // namespace qrecsim
