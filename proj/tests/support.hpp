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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qrecsim/database.hpp"
#include "qrecsim/gate.hpp"
#include "qrecsim/statevec.hpp"

namespace qrecsim::testing {

using cd = std::complex<double>;

inline QuantumState random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(std::int64_t{1} << n);
    for (auto &a : v) {
        a = cd(g(gen), g(gen));
    }
    v.normalize();
    return QuantumState(RegisterLayout::flat(n), v);
}

/// Dense 2^n x 2^n operator of a controlled single-qubit gate built from
/// Kronecker products, qubit 0 leftmost.
inline Eigen::MatrixXcd kron_operator(std::size_t n, const GateOp &gate) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd p1 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    Eigen::MatrixXcd active = Eigen::MatrixXcd::Identity(1, 1);
    Eigen::MatrixXcd gated = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        Eigen::Matrix2cd a = id;
        Eigen::Matrix2cd b = id;
        if (q == gate.targets().front()) {
            a = gate.matrix();
        }
        for (const auto &c : gate.controls()) {
            if (c.qubit == q) {
                a = c.value ? p1 : p0;
                b = a;
            }
        }
        active = Eigen::kroneckerProduct(active, a).eval();
        gated = Eigen::kroneckerProduct(gated, b).eval();
    }
    const auto dim = gated.rows();
    return active + (Eigen::MatrixXcd::Identity(dim, dim) - gated);
}

/// Random table with distinct dense ids.
inline DatabaseTable random_table(std::mt19937_64 &gen, std::size_t n, std::size_t l) {
    std::size_t q = 1;
    while ((std::size_t{1} << q) < n) {
        ++q;
    }
    std::uniform_int_distribution<std::uint64_t> feat(0, (std::uint64_t{1} << l) - 1);
    std::vector<DatabaseRecord> rows;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({BitString::from_uint(i, q), BitString::from_uint(feat(gen), l)});
    }
    return DatabaseTable(std::move(rows));
}

inline double sq(double x) { return x * x; }

} // namespace qrecsim::testing
