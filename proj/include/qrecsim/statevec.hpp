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
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrecsim/bitstring.hpp"
#include "qrecsim/errors.hpp"
#include "qrecsim/gate.hpp"
#include "qrecsim/layout.hpp"
#include "qrecsim/rng.hpp"

namespace qrecsim {

/// Registers above this width need `SizePolicy::Uncapped` (2^26 complex doubles = 1 GiB).
inline constexpr std::size_t kSoftQubitCap = 26;

enum class SizePolicy { Capped, Uncapped };

/**
 * Dense pure state over `layout.num_qubits()` qubits. Amplitude index bit
 * (n-1-k) holds qubit k, so the ket "10" is index 2.
 *
 * Mutation goes through the free functions below; each of them keeps the
 * vector normalized up to rounding.
 */
template <typename Scalar>
class BasicQuantumState {
  public:
    using scalar_type = Scalar;
    using complex_type = std::complex<Scalar>;
    using vector_type = Eigen::Matrix<complex_type, Eigen::Dynamic, 1>;

    /// |0...0> over `layout`.
    explicit BasicQuantumState(RegisterLayout layout, SizePolicy policy = SizePolicy::Capped)
        : layout_(std::move(layout)) {
        check_size(layout_.num_qubits(), policy);
        amplitudes_ = vector_type::Zero(static_cast<Eigen::Index>(dimension()));
        amplitudes_(0) = complex_type(1);
    }

    /// Takes ownership of `amplitudes`; throws ValidationError unless the norm is 1 within 1e-10.
    BasicQuantumState(RegisterLayout layout, vector_type amplitudes,
                      SizePolicy policy = SizePolicy::Capped)
        : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
        check_size(layout_.num_qubits(), policy);
        if (static_cast<std::uint64_t>(amplitudes_.size()) != dimension()) {
            throw ConfigError("amplitude vector has " + std::to_string(amplitudes_.size()) +
                              " entries, layout needs " + std::to_string(dimension()));
        }
        if (std::abs(norm_squared() - Scalar(1)) > Scalar(1e-10)) {
            throw ValidationError("amplitude vector is not normalized");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return layout_.num_qubits(); }
    [[nodiscard]] std::uint64_t dimension() const noexcept {
        return std::uint64_t{1} << layout_.num_qubits();
    }
    [[nodiscard]] const RegisterLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const vector_type &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] vector_type &mutable_amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] complex_type amplitude(std::uint64_t index) const {
        return amplitudes_(static_cast<Eigen::Index>(index));
    }
    [[nodiscard]] Scalar norm_squared() const { return amplitudes_.squaredNorm(); }

    /// Same amplitudes viewed through a different layout of equal width.
    void relabel(RegisterLayout layout) {
        if (layout.num_qubits() != num_qubits()) {
            throw ConfigError("relabel changes the qubit count");
        }
        layout_ = std::move(layout);
    }

  private:
    static void check_size(std::size_t n, SizePolicy policy) {
        if (n == 0) {
            throw ConfigError("a register needs at least one qubit");
        }
        if (n > 62 || (policy == SizePolicy::Capped && n > kSoftQubitCap)) {
            throw ConfigError(std::to_string(n) + " qubits exceeds the " +
                              std::to_string(kSoftQubitCap) + "-qubit soft cap");
        }
    }

    RegisterLayout layout_;
    vector_type amplitudes_;
};

using QuantumState = BasicQuantumState<double>;

struct MeasurementRecord {
    std::vector<std::size_t> qubit_indices;
    BitString observed_bits;
    double probability = 0.0;
    std::uint64_t rng_seed = 0;
};

namespace detail {

/// Complex product without the C99 Annex G inf/nan recovery path.
template <typename T>
inline std::complex<T> cmul(const std::complex<T> &a, const std::complex<T> &b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline std::uint64_t qubit_bit(std::size_t n, std::size_t qubit) {
    return std::uint64_t{1} << (n - 1 - qubit);
}

inline void check_qubit_list(std::size_t n, std::span<const std::size_t> qubits) {
    std::vector<bool> seen(n, false);
    for (auto q : qubits) {
        if (q >= n) {
            throw ConfigError("qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(n) + " qubits");
        }
        if (seen[q]) {
            throw ConfigError("qubit " + std::to_string(q) + " listed twice");
        }
        seen[q] = true;
    }
}

/// Outcome value of `qubits` (first listed = MSB) at basis index `i`.
inline std::uint64_t gather_bits(std::uint64_t i, std::size_t n, std::span<const std::size_t> qubits) {
    std::uint64_t v = 0;
    for (auto q : qubits) {
        v = (v << 1U) | ((i >> (n - 1 - q)) & 1U);
    }
    return v;
}

/// Basis offset obtained by writing `value` into `qubits` (first listed = MSB).
inline std::uint64_t scatter_bits(std::uint64_t value, std::size_t n,
                                  std::span<const std::size_t> qubits) {
    std::uint64_t off = 0;
    const std::size_t k = qubits.size();
    for (std::size_t j = 0; j < k; ++j) {
        if ((value >> (k - 1 - j)) & 1U) {
            off |= qubit_bit(n, qubits[j]);
        }
    }
    return off;
}

template <typename Scalar>
void apply_householder(BasicQuantumState<Scalar> &state, const GateOp &gate, std::uint64_t cmask,
                       std::uint64_t cval) {
    using C = std::complex<Scalar>;
    const std::size_t n = state.num_qubits();
    const auto &targets = gate.targets();
    const auto &support = gate.support();
    const double m = static_cast<double>(support.size());
    const bool has_zero = support.front() == 0;

    // v = |0> - |u>, |u> uniform over the support; H = I - 2 v v^T / |v|^2 swaps |0> and |u>.
    std::vector<std::uint64_t> offsets;
    std::vector<double> coeffs;
    offsets.push_back(0);
    coeffs.push_back(1.0 - (has_zero ? 1.0 / std::sqrt(m) : 0.0));
    for (auto s : support) {
        if (s != 0) {
            offsets.push_back(scatter_bits(s, n, targets));
            coeffs.push_back(-1.0 / std::sqrt(m));
        }
    }
    double norm2 = 0.0;
    for (double c : coeffs) {
        norm2 += c * c;
    }
    if (norm2 < 1e-30) {
        return; // support == {0}: identity
    }
    for (auto &c : coeffs) {
        c /= std::sqrt(norm2);
    }

    std::uint64_t tmask = 0;
    for (auto t : targets) {
        tmask |= qubit_bit(n, t);
    }
    auto &a = state.mutable_amplitudes();
    const std::uint64_t dim = state.dimension();
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) != 0 || (base & cmask) != cval) {
            continue;
        }
        C dot(0);
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            dot += Scalar(coeffs[j]) * a(static_cast<Eigen::Index>(base | offsets[j]));
        }
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            a(static_cast<Eigen::Index>(base | offsets[j])) -= Scalar(2 * coeffs[j]) * dot;
        }
    }
}

/// Index of the outcome selected by a uniform draw `u` in [0, 1).
inline std::size_t sample_index(std::span<const double> probabilities, double u) {
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] <= 0.0) {
            continue;
        }
        last_nonzero = i;
        cumulative += probabilities[i];
        if (u < cumulative) {
            return i;
        }
    }
    return last_nonzero; // rounding left u above the running sum
}

} // namespace detail

/// Basis state over a flat n-qubit layout; `bits` must have width n.
inline QuantumState init_basis_state(std::size_t n, const BitString &bits) {
    if (bits.width() != n) {
        throw ConfigError("basis string has width " + std::to_string(bits.width()) + ", register has " +
                          std::to_string(n) + " qubits");
    }
    QuantumState s(RegisterLayout::flat(n));
    s.mutable_amplitudes().setZero();
    s.mutable_amplitudes()(static_cast<Eigen::Index>(bits.to_uint())) = 1.0;
    return s;
}

/// Basis state over an explicit layout.
template <typename Scalar = double>
BasicQuantumState<Scalar> init_basis_state(const RegisterLayout &layout, const BitString &bits,
                                           SizePolicy policy = SizePolicy::Capped) {
    if (bits.width() != layout.num_qubits()) {
        throw ConfigError("basis string width does not match the layout");
    }
    BasicQuantumState<Scalar> s(layout, policy);
    s.mutable_amplitudes().setZero();
    s.mutable_amplitudes()(static_cast<Eigen::Index>(bits.to_uint())) = Scalar(1);
    return s;
}

/**
 * Applies `gate` in place by stride iteration over amplitude pairs, O(2^n)
 * per gate. Controls restrict the action to basis states whose control
 * qubits hold the required values.
 */
template <typename Scalar>
void apply_gate(BasicQuantumState<Scalar> &state, const GateOp &gate) {
    using C = std::complex<Scalar>;
    const std::size_t n = state.num_qubits();
    gate.check_indices(n);

    std::uint64_t cmask = 0;
    std::uint64_t cval = 0;
    for (const auto &c : gate.controls()) {
        const auto bit = detail::qubit_bit(n, c.qubit);
        cmask |= bit;
        if (c.value) {
            cval |= bit;
        }
    }
    if (gate.kind() == GateKind::PrepUniform) {
        detail::apply_householder(state, gate, cmask, cval);
        return;
    }
    const Eigen::Matrix2cd m = gate.matrix();
    if (!is_unitary(m)) {
        throw ValidationError("gate matrix is not unitary within 1e-10");
    }
    const C m00(m(0, 0)), m01(m(0, 1)), m10(m(1, 0)), m11(m(1, 1));
    const std::uint64_t tb = detail::qubit_bit(n, gate.targets().front());
    // Walk the submasks of the free bits so only control-satisfying pairs are visited.
    const std::uint64_t free = (state.dimension() - 1) & ~(tb | cmask);
    C *a = state.mutable_amplitudes().data();
    const auto for_each_pair = [&](auto &&fn) {
        std::uint64_t s = 0;
        do {
            fn(a[s | cval], a[s | cval | tb]);
            s = (s - free) & free;
        } while (s != 0);
    };
    if (m01 == C(0) && m10 == C(0)) {
        const bool keep0 = m00 == C(1);
        for_each_pair([&](C &v0, C &v1) {
            if (!keep0) {
                v0 = detail::cmul(m00, v0);
            }
            v1 = detail::cmul(m11, v1);
        });
    } else if (m00 == C(0) && m11 == C(0) && m01 == C(1) && m10 == C(1)) {
        for_each_pair([](C &v0, C &v1) { std::swap(v0, v1); });
    } else {
        for_each_pair([&](C &v0, C &v1) {
            const C x0 = v0;
            const C x1 = v1;
            v0 = detail::cmul(m00, x0) + detail::cmul(m01, x1);
            v1 = detail::cmul(m10, x0) + detail::cmul(m11, x1);
        });
    }
}

/// `gate` conditioned on `controls` in addition to any controls it already has.
template <typename Scalar>
void apply_controlled(BasicQuantumState<Scalar> &state, std::vector<Control> controls,
                      const GateOp &gate) {
    apply_gate(state, gate.controlled_by(std::move(controls)));
}

/// Exact marginal over `qubits`; entry v is the probability of reading v (first qubit = MSB).
template <typename Scalar>
std::vector<double> marginal_probabilities(const BasicQuantumState<Scalar> &state,
                                           std::span<const std::size_t> qubits) {
    const std::size_t n = state.num_qubits();
    detail::check_qubit_list(n, qubits);
    if (qubits.size() > 30) {
        throw ConfigError("marginal over more than 30 qubits");
    }
    std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
    const auto &a = state.amplitudes();
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        const double w = static_cast<double>(std::norm(a(static_cast<Eigen::Index>(i))));
        if (w != 0.0) {
            p[detail::gather_bits(i, n, qubits)] += w;
        }
    }
    return p;
}

/// Marginal keyed by outcome string; no state mutation.
template <typename Scalar>
std::map<BitString, double> distribution(const BasicQuantumState<Scalar> &state,
                                         std::span<const std::size_t> qubits) {
    const auto p = marginal_probabilities(state, qubits);
    std::map<BitString, double> out;
    for (std::size_t v = 0; v < p.size(); ++v) {
        out.emplace(BitString::from_uint(v, qubits.size()), p[v]);
    }
    return out;
}

namespace detail {

template <typename Scalar>
void collapse(BasicQuantumState<Scalar> &state, std::span<const std::size_t> qubits,
              std::uint64_t outcome, double probability) {
    const std::size_t n = state.num_qubits();
    auto &a = state.mutable_amplitudes();
    const Scalar scale = Scalar(1.0 / std::sqrt(probability));
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        auto &v = a(static_cast<Eigen::Index>(i));
        if (gather_bits(i, n, qubits) == outcome) {
            v *= scale;
        } else {
            v = 0;
        }
    }
}

} // namespace detail

/**
 * Projective measurement of `qubits` in the computational basis. Draws one
 * uniform from `rng`, collapses `state` in place and returns the outcome.
 */
template <typename Scalar>
MeasurementRecord measure_qubits(BasicQuantumState<Scalar> &state,
                                 std::span<const std::size_t> qubits, Rng &rng) {
    const auto p = marginal_probabilities(state, qubits);
    double total = 0.0;
    for (double v : p) {
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("marginal probabilities sum to " + std::to_string(total));
    }
    const std::size_t outcome = detail::sample_index(p, rng.uniform());
    detail::collapse(state, qubits, outcome, p[outcome]);
    return MeasurementRecord{std::vector<std::size_t>(qubits.begin(), qubits.end()),
                             BitString::from_uint(outcome, qubits.size()), p[outcome], rng.seed()};
}

/// Probabilities at or below this are treated as impossible branches.
inline constexpr double kImpossibleProbability = 1e-20;

/// Forces the outcome `bits` on `qubits`; returns its prior probability.
template <typename Scalar>
double postselect(BasicQuantumState<Scalar> &state, std::span<const std::size_t> qubits,
                  const BitString &bits) {
    if (bits.width() != qubits.size()) {
        throw ConfigError("post-selection pattern width does not match the qubit list");
    }
    const auto p = marginal_probabilities(state, qubits);
    const auto outcome = bits.to_uint();
    if (p[outcome] <= kImpossibleProbability) {
        throw ImpossibleBranchError("post-selected outcome " + bits.str() + " has probability " +
                                    std::to_string(p[outcome]));
    }
    detail::collapse(state, qubits, outcome, p[outcome]);
    return p[outcome];
}

/// |<a|b>|^2.
template <typename Scalar>
double fidelity(const BasicQuantumState<Scalar> &a, const BasicQuantumState<Scalar> &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ConfigError("fidelity of states with different qubit counts");
    }
    return static_cast<double>(std::norm(a.amplitudes().dot(b.amplitudes())));
}

/// CSV rows `index,ket,real,imag` for every nonzero amplitude, ascending index.
template <typename Scalar>
void write_state_csv(std::ostream &os, const BasicQuantumState<Scalar> &state) {
    os << "index,ket,real,imag\n";
    const auto old_precision = os.precision(17);
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        const auto v = state.amplitude(i);
        if (v == std::complex<Scalar>(0)) {
            continue;
        }
        os << i << ',' << state.layout().ket(i) << ',' << static_cast<double>(v.real()) << ','
           << static_cast<double>(v.imag()) << '\n';
    }
    os.precision(old_precision);
}

} // namespace qrecsim
