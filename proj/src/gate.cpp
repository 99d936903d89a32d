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
#include "qrecsim/gate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "qrecsim/errors.hpp"

namespace qrecsim {

namespace {

using cd = std::complex<double>;

double p1_angle(std::size_t l) { return std::numbers::pi / (2.0 * static_cast<double>(l)); }

} // namespace

const char *kind_name(GateKind kind, bool dagger) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::Y:
        return "Y";
    case GateKind::Z:
        return "Z";
    case GateKind::P1:
        return dagger ? "P1_DAG" : "P1";
    case GateKind::P1InvSq:
        return dagger ? "P1_INV_SQ_DAG" : "P1_INV_SQ";
    case GateKind::Phase:
        return "PHASE";
    case GateKind::Matrix:
        return "MATRIX";
    case GateKind::PrepUniform:
        return "PREP_UNIFORM";
    }
    return "?";
}

double GateOp::theta() const noexcept {
    switch (kind_) {
    case GateKind::P1:
    case GateKind::P1InvSq:
        return p1_angle(feature_width_);
    case GateKind::Phase:
        return theta_;
    default:
        return 0.0;
    }
}

Eigen::Matrix2cd GateOp::matrix() const {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::numbers::sqrt2;
    switch (kind_) {
    case GateKind::H:
        m << r, r, r, -r;
        return m;
    case GateKind::X:
        m << 0, 1, 1, 0;
        return m;
    case GateKind::Y:
        m << 0, cd(0, -1), cd(0, 1), 0;
        return m;
    case GateKind::Z:
        m << 1, 0, 0, -1;
        return m;
    case GateKind::P1: {
        const double a = dagger_ ? p1_angle(feature_width_) : -p1_angle(feature_width_);
        m << std::polar(1.0, a), 0, 0, 1;
        return m;
    }
    case GateKind::P1InvSq: {
        const double a = 2.0 * (dagger_ ? -p1_angle(feature_width_) : p1_angle(feature_width_));
        m << std::polar(1.0, a), 0, 0, 1;
        return m;
    }
    case GateKind::Phase:
        m << 1, 0, 0, std::polar(1.0, theta_);
        return m;
    case GateKind::Matrix:
        return matrix_;
    case GateKind::PrepUniform:
        break;
    }
    throw ConfigError("PREP_UNIFORM has no 2x2 matrix");
}

GateOp GateOp::controlled_by(std::vector<Control> extra) const {
    GateOp g = *this;
    g.controls_.insert(g.controls_.end(), extra.begin(), extra.end());
    return g;
}

void GateOp::check_indices(std::size_t num_qubits) const {
    std::set<std::size_t> seen;
    for (auto q : qubits()) {
        if (q >= num_qubits) {
            throw ConfigError(std::string(kind_name(kind_)) + " references qubit " +
                              std::to_string(q) + " of a " + std::to_string(num_qubits) +
                              "-qubit register");
        }
        if (!seen.insert(q).second) {
            throw ConfigError(std::string(kind_name(kind_)) + " repeats qubit " + std::to_string(q));
        }
    }
}

std::vector<std::size_t> GateOp::qubits() const {
    std::vector<std::size_t> out = targets_;
    for (const auto &c : controls_) {
        out.push_back(c.qubit);
    }
    return out;
}

bool operator==(const GateOp &a, const GateOp &b) {
    return a.kind_ == b.kind_ && a.targets_ == b.targets_ && a.controls_ == b.controls_ &&
           a.dagger_ == b.dagger_ && a.feature_width_ == b.feature_width_ &&
           a.theta_ == b.theta_ && a.matrix_ == b.matrix_ && a.support_ == b.support_;
}

GateOp make_gate(GateKind kind, std::size_t target) {
    if (kind != GateKind::H && kind != GateKind::X && kind != GateKind::Y && kind != GateKind::Z) {
        throw ConfigError("make_gate only builds H, X, Y and Z");
    }
    GateOp g;
    g.kind_ = kind;
    g.targets_ = {target};
    return g;
}

GateOp p1(std::size_t target, std::size_t feature_width) {
    if (feature_width == 0) {
        throw ConfigError("P1 needs a feature width >= 1");
    }
    GateOp g;
    g.kind_ = GateKind::P1;
    g.targets_ = {target};
    g.feature_width_ = feature_width;
    return g;
}

GateOp p1_inv_sq(std::size_t target, std::size_t feature_width) {
    GateOp g = p1(target, feature_width);
    g.kind_ = GateKind::P1InvSq;
    return g;
}

GateOp phase(std::size_t target, double theta) {
    GateOp g;
    g.kind_ = GateKind::Phase;
    g.targets_ = {target};
    g.theta_ = theta;
    return g;
}

GateOp unitary(std::size_t target, const Eigen::Matrix2cd &m) {
    if (!is_unitary(m)) {
        throw ValidationError("MATRIX gate is not unitary within 1e-10");
    }
    GateOp g;
    g.kind_ = GateKind::Matrix;
    g.targets_ = {target};
    g.matrix_ = m;
    return g;
}

GateOp prep_uniform(std::vector<std::size_t> targets, std::vector<std::uint64_t> support) {
    if (targets.empty() || targets.size() > 62) {
        throw ConfigError("PREP_UNIFORM needs between 1 and 62 targets");
    }
    if (support.empty()) {
        throw ConfigError("PREP_UNIFORM needs a nonempty support");
    }
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
        throw ConfigError("PREP_UNIFORM support has duplicate values");
    }
    if (support.back() >> targets.size() != 0) {
        throw ConfigError("PREP_UNIFORM support value exceeds the target width");
    }
    GateOp g;
    g.kind_ = GateKind::PrepUniform;
    g.targets_ = std::move(targets);
    g.support_ = std::move(support);
    return g;
}

GateOp adjoint(const GateOp &gate) {
    GateOp g = gate;
    switch (gate.kind_) {
    case GateKind::P1:
    case GateKind::P1InvSq:
        g.dagger_ = !gate.dagger_;
        break;
    case GateKind::Phase:
        g.theta_ = -gate.theta_;
        break;
    case GateKind::Matrix:
        g.matrix_ = gate.matrix_.adjoint();
        break;
    default: // H, X, Y, Z and the Householder reflection are self-adjoint
        break;
    }
    return g;
}

bool is_unitary(const Eigen::Matrix2cd &m, double tol) {
    return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

} // namespace qrecsim
