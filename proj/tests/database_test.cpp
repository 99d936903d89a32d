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
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qrecsim/circuit.hpp"
#include "qrecsim/database.hpp"
#include "support.hpp"

using namespace qrecsim;

namespace {

std::size_t parse_error_line(std::string_view text) {
    try {
        (void)parse_table(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 9999;
}

} // namespace

TEST_CASE("binary ids keep their written width") {
    const auto t = parse_table("id,feature\n00,01\n01,10\n");
    CHECK(t.size() == 2);
    CHECK(t.id_width() == 2);
    CHECK(t.feature_width() == 2);
    CHECK(t[1].id == BitString("01"));
}

TEST_CASE("decimal ids get the minimal width") {
    const auto t = parse_table("id,feature\n0,101\n5,011\n2,111\n");
    CHECK(t.id_width() == 3);
    CHECK(t[1].id == BitString("101"));
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
    const auto t = parse_table("# note\r\nid,feature\r\n\r\n0,1\r\n1,0\r\n");
    CHECK(t.size() == 2);
    CHECK(t.feature_width() == 1);
}

TEST_CASE("parse errors report their line") {
    CHECK(parse_error_line("") == 0);
    CHECK(parse_error_line("id,feature\n") == 0);
    CHECK(parse_error_line("name,bits\n0,1\n") == 1);
    CHECK(parse_error_line("id,feature\n0,1,1\n") == 2);
    CHECK(parse_error_line("id,feature\n0,12\n") == 2);
    CHECK(parse_error_line("id,feature\n0,10\n1,101\n") == 3);
    CHECK(parse_error_line("id,feature\n0,10\n,11\n") == 3);
    CHECK(parse_error_line("id,feature\n0,10\n1,\n") == 3);
    CHECK(parse_error_line("id,feature\n0,10\nx,11\n") == 3);
    CHECK(parse_error_line("id,feature\n0,10\n1,11\n0,01\n") == 4);
}

TEST_CASE("table rejects more records than ids") {
    std::vector<DatabaseRecord> rows{{BitString("0"), BitString("1")},
                                     {BitString("1"), BitString("0")}};
    CHECK_NOTHROW(DatabaseTable{rows});
    rows.push_back({BitString("1"), BitString("1")});
    CHECK_THROWS_AS(DatabaseTable{rows}, ConfigError);
    CHECK_THROWS_AS(DatabaseTable{{}}, ConfigError);
}

TEST_CASE("bundled CSV file matches the embedded copy") {
    std::ifstream f(std::string(QRECSIM_DATA_DIR) + "/bundled_table.csv", std::ios::binary);
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == bundled_table_csv());
    const auto t = bundled_table();
    CHECK(t.size() == 16);
    CHECK(t.id_width() == 4);
    CHECK(t.feature_width() == 6);
    CHECK(t.matching(BitString(kBundledQuery)) == std::vector<std::size_t>{10});
}

TEST_CASE("digest is stable and content sensitive") {
    const auto a = parse_table("id,feature\n0,1\n1,0\n");
    const auto b = parse_table("id,feature\n0,1\n1,1\n");
    CHECK(a.digest() == parse_table("# c\nid,feature\n0,1\n1,0\n").digest());
    CHECK(a.digest() != b.digest());
    CHECK(a.digest().rfind("fnv1a64:", 0) == 0);
    CHECK(a.digest().size() == 8 + 16);
}

TEST_CASE("prepared database state is uniform over record branches") {
    const auto table = parse_table("id,feature\n00,01\n01,10\n11,11\n");
    const auto layout = layout_for(table);
    CHECK(layout.num_qubits() == 2 + 2 + 2 + 1);
    const auto psi = prepare_database_state(table, layout);
    const auto amps = branch_amplitudes(psi, table, BitString("00"));
    for (const auto &a : amps) {
        CHECK(std::abs(a - 1.0 / std::sqrt(3.0)) < 1e-12);
    }
    CHECK(psi.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("gate-based initialisation equals direct preparation") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + gen() % 8;
        const std::size_t l = 1 + gen() % 3;
        auto table = qrecsim::testing::random_table(gen, n, l);
        const auto layout = layout_for(table);
        const UserQuery query{BitString::from_uint(gen() % (1U << l), l)};
        auto direct = prepare_database_state(table, layout);
        inject_user_feature(direct, query);
        auto gated = QuantumState(layout);
        apply_program(gated, build_init_stage(table, query, layout));
        CHECK((gated.amplitudes() - direct.amplitudes()).norm() < 1e-12);
    }
}

TEST_CASE("sparse ids are prepared through the uniform reflection") {
    const auto table = parse_table("id,feature\n000,1\n011,0\n110,1\n");
    const auto layout = layout_for(table);
    const UserQuery query{BitString("1")};
    auto gated = QuantumState(layout);
    apply_program(gated, build_init_stage(table, query, layout));
    auto direct = prepare_database_state(table, layout);
    inject_user_feature(direct, query);
    CHECK((gated.amplitudes() - direct.amplitudes()).norm() < 1e-12);
}

TEST_CASE("user feature injection") {
    const auto table = bundled_table();
    auto psi = prepare_database_state(table, layout_for(table));
    CHECK_THROWS_AS(inject_user_feature(psi, UserQuery{BitString("10")}), ConfigError);
    inject_user_feature(psi, UserQuery{BitString(kBundledQuery)});
    CHECK_THROWS_AS(inject_user_feature(psi, UserQuery{BitString(kBundledQuery)}), ConfigError);
    const auto amps = branch_amplitudes(psi, table, BitString(kBundledQuery));
    for (const auto &a : amps) {
        CHECK(std::abs(a - 0.25) < 1e-12);
    }
}
