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

#include "qrecsim/pipeline.hpp"
#include "qrecsim/report.hpp"
#include "support.hpp"

using namespace qrecsim;

namespace {

RunConfig sampled(std::uint64_t seed, std::size_t shots) {
    RunConfig c;
    c.seed = seed;
    c.shots = shots;
    return c;
}

double by_id(const std::vector<RecordProbability> &v, const BitString &id) {
    for (const auto &r : v) {
        if (r.id == id) {
            return r.p;
        }
    }
    return -1.0;
}

} // namespace

TEST_CASE("exact mode equals the closed form") {
    const auto table = bundled_table();
    const UserQuery query{BitString(kBundledQuery)};
    for (std::size_t k : {0U, 1U, 2U}) {
        RunConfig c;
        c.exact = true;
        if (k > 0) {
            AmplificationPlan plan;
            plan.top_k = k;
            c.amplification = plan;
        }
        const auto out = run(table, query, c);
        for (std::size_t p = 0; p < table.size(); ++p) {
            CHECK(std::abs(by_id(out.recommended, table[p].id) - out.analytic.post_grover[p]) < 1e-10);
            CHECK(std::abs(out.stage_reports[1].distribution[p].p - out.analytic.conditional_knn[p]) < 1e-10);
        }
        CHECK(std::abs(out.c0.exact_p_zero - out.analytic.p_c0_zero) < 1e-12);
        for (std::size_t t = 0; t < out.trajectory.size(); ++t) {
            CHECK(std::abs(out.trajectory[t] - out.analytic.trajectory[t]) < 1e-10);
        }
    }
}

TEST_CASE("identical configs give byte-identical reports") {
    const auto table = bundled_table();
    const UserQuery query{BitString(kBundledQuery)};
    auto c = sampled(42, 500);
    c.amplification = AmplificationPlan{};
    const auto a = pipeline_report(table, query, c, run(table, query, c)).dump(2);
    const auto b = pipeline_report(table, query, c, run(table, query, c)).dump(2);
    CHECK(a == b);
    c.seed = 43;
    CHECK(a != pipeline_report(table, query, c, run(table, query, c)).dump(2));
}

TEST_CASE("cached marginals and per-shot simulation agree exactly") {
    const auto table = parse_table("id,feature\n0,000\n1,011\n2,111\n3,101\n4,100\n");
    const UserQuery query{BitString("100")};
    auto c = sampled(9, 300);
    AmplificationPlan plan;
    plan.top_k = 1;
    c.amplification = plan;
    const auto fast = run(table, query, c);
    c.simulate_each_shot = true;
    const auto slow = run(table, query, c);
    CHECK(fast.c0.successes == slow.c0.successes);
    CHECK(fast.c0.failures == slow.c0.failures);
    REQUIRE(fast.recommended.size() == slow.recommended.size());
    for (std::size_t i = 0; i < fast.recommended.size(); ++i) {
        CHECK(fast.recommended[i].id == slow.recommended[i].id);
        CHECK(fast.recommended[i].p == slow.recommended[i].p);
    }
}

TEST_CASE("empirical c0 rate within 3 sigma") {
    const auto table = bundled_table();
    const UserQuery query{BitString("000000")};
    const auto out = run(table, query, sampled(5, 20000));
    const double trials = static_cast<double>(out.c0.successes + out.c0.failures);
    const double p = out.c0.exact_p_zero;
    CHECK(std::abs(out.c0.empirical_p_zero - p) < 3.0 * std::sqrt(p * (1 - p) / trials));
}

TEST_CASE("sampled frequencies approach the exact distribution") {
    const auto table = bundled_table();
    const UserQuery query{BitString(kBundledQuery)};
    const auto out = run(table, query, sampled(1, 20000));
    const auto exact = predict(table, query, std::nullopt).conditional_knn;
    for (std::size_t p = 0; p < table.size(); ++p) {
        const double sigma = std::sqrt(exact[p] * (1 - exact[p]) / 20000.0);
        CHECK(std::abs(by_id(out.recommended, table[p].id) - exact[p]) < 4.0 * sigma + 1e-12);
    }
}

TEST_CASE("ranking breaks ties by ascending id") {
    std::vector<RecordProbability> v{{BitString("11"), BitString("0"), 0.25},
                                     {BitString("01"), BitString("1"), 0.25},
                                     {BitString("10"), BitString("1"), 0.5}};
    rank(v);
    CHECK(v[0].id == BitString("10"));
    CHECK(v[1].id == BitString("01"));
    CHECK(v[2].id == BitString("11"));
}

TEST_CASE("orthogonal query exhausts every shot") {
    const auto table = parse_table("id,feature\n0,11\n1,11\n");
    CHECK_THROWS_AS(run(table, UserQuery{BitString("00")}, sampled(1, 10)), RetryExhaustedError);
    RunConfig c;
    c.exact = true;
    CHECK_THROWS_AS(run(table, UserQuery{BitString("00")}, c), RetryExhaustedError);
}

TEST_CASE("run configuration is validated") {
    const auto table = bundled_table();
    auto c = sampled(1, 0);
    CHECK_THROWS_AS(run(table, UserQuery{BitString(kBundledQuery)}, c), ConfigError);
    c.shots = 1;
    c.max_attempts = 0;
    CHECK_THROWS_AS(run(table, UserQuery{BitString(kBundledQuery)}, c), ConfigError);
}

TEST_CASE("stage dumps keep full states only on request") {
    const auto table = parse_table("id,feature\n0,01\n1,10\n");
    RunConfig c;
    c.exact = true;
    CHECK_FALSE(run(table, UserQuery{BitString("01")}, c).stage_reports[0].state.has_value());
    c.emit_stage_dumps = true;
    CHECK(run(table, UserQuery{BitString("01")}, c).stage_reports[0].state.has_value());
}

TEST_CASE("one-element experiment") {
    const auto r = reproduce_experiment(ExperimentCase::OneElement);
    const auto &knn = r.outcome.stage_reports.at(1).distribution;
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < knn.size(); ++i) {
        if (knn[i].p > knn[argmax].p) {
            argmax = i;
        }
    }
    CHECK(knn[argmax].feature == BitString(kBundledQuery));
    CHECK(knn[argmax].p < 0.5);
    CHECK(r.outcome.iterations == 3);
    CHECK(r.outcome.recommended.front().feature == BitString(kBundledQuery));
    CHECK(r.outcome.recommended.front().p >= 0.9);
    CHECK(by_id(r.after_first_iteration, BitString("1010")) > knn[argmax].p);
}

TEST_CASE("two-element experiment") {
    const auto r = reproduce_experiment(ExperimentCase::TwoElement);
    REQUIRE(r.outcome.marked_patterns.size() == 2);
    const double a = by_id(r.outcome.recommended, BitString("1010"));
    const double b = by_id(r.outcome.recommended, BitString("0011"));
    CHECK(std::abs(a - b) / std::max(a, b) < 0.10);
    REQUIRE(r.outcome.analytic.p_max.has_value());
    CHECK(std::abs(a + b - *r.outcome.analytic.p_max) < 0.05);
}
