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
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrecsim {

enum class GateKind {
    H,
    X,
    Y,
    Z,
    P1,          ///< diag(e^{-i pi/(2l)}, 1)
    P1InvSq,     ///< P1^{-2} = diag(e^{+i pi/l}, 1)
    Phase,       ///< diag(1, e^{i theta})
    Matrix,      ///< arbitrary unitary 2x2
    PrepUniform, ///< Householder reflection swapping |0..0> with the uniform state over `support`
};

[[nodiscard]] const char *kind_name(GateKind kind, bool dagger = false);

/// Condition "qubit reads `value`" on a controlled gate.
struct Control {
    std::size_t qubit = 0;
    bool value = true;

    friend bool operator==(const Control &, const Control &) = default;
};

/**
 * One gate instruction. Every kind except PrepUniform acts on a single
 * target. Controls may require either bit value.
 */
class GateOp {
  public:
    [[nodiscard]] GateKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<std::size_t> &targets() const noexcept { return targets_; }
    [[nodiscard]] const std::vector<Control> &controls() const noexcept { return controls_; }
    [[nodiscard]] bool dagger() const noexcept { return dagger_; }
    /// Feature width for P1 / P1InvSq, 0 otherwise.
    [[nodiscard]] std::size_t feature_width() const noexcept { return feature_width_; }
    /// Angle parameter: theta for Phase, pi/(2l) for P1 and P1InvSq, 0 otherwise.
    [[nodiscard]] double theta() const noexcept;
    [[nodiscard]] const std::vector<std::uint64_t> &support() const noexcept { return support_; }

    /// 2x2 matrix for single-target kinds (daggered if needed). Throws ConfigError for PrepUniform.
    [[nodiscard]] Eigen::Matrix2cd matrix() const;

    /// Copy of this gate with additional controls.
    [[nodiscard]] GateOp controlled_by(std::vector<Control> extra) const;

    /// Throws ConfigError unless all targets and controls are distinct and below `num_qubits`.
    void check_indices(std::size_t num_qubits) const;

    /// All qubit indices touched, targets first.
    [[nodiscard]] std::vector<std::size_t> qubits() const;

    friend GateOp adjoint(const GateOp &gate);
    friend bool operator==(const GateOp &a, const GateOp &b);

    friend GateOp make_gate(GateKind, std::size_t);
    friend GateOp p1(std::size_t, std::size_t);
    friend GateOp p1_inv_sq(std::size_t, std::size_t);
    friend GateOp phase(std::size_t, double);
    friend GateOp unitary(std::size_t, const Eigen::Matrix2cd &);
    friend GateOp prep_uniform(std::vector<std::size_t>, std::vector<std::uint64_t>);

  private:
    GateKind kind_ = GateKind::X;
    std::vector<std::size_t> targets_;
    std::vector<Control> controls_;
    bool dagger_ = false;
    std::size_t feature_width_ = 0;
    double theta_ = 0.0;
    Eigen::Matrix2cd matrix_ = Eigen::Matrix2cd::Identity();
    std::vector<std::uint64_t> support_;
};

GateOp make_gate(GateKind kind, std::size_t target);
inline GateOp h(std::size_t target) { return make_gate(GateKind::H, target); }
inline GateOp x(std::size_t target) { return make_gate(GateKind::X, target); }
inline GateOp y(std::size_t target) { return make_gate(GateKind::Y, target); }
inline GateOp z(std::size_t target) { return make_gate(GateKind::Z, target); }
GateOp p1(std::size_t target, std::size_t feature_width);
GateOp p1_inv_sq(std::size_t target, std::size_t feature_width);
GateOp phase(std::size_t target, double theta);
/// Throws ValidationError unless `m` is unitary within 1e-10.
GateOp unitary(std::size_t target, const Eigen::Matrix2cd &m);
/// `support` holds distinct basis values of the target group (first target = MSB).
GateOp prep_uniform(std::vector<std::size_t> targets, std::vector<std::uint64_t> support);

/// Conjugate transpose.
GateOp adjoint(const GateOp &gate);

[[nodiscard]] bool is_unitary(const Eigen::Matrix2cd &m, double tol = 1e-10);

} // namespace qrecsim
