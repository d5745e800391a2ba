// Copyright 2026 The OWQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Matrix-free kernels on amplitude vectors.
//
// Position p (1-based) of a sub-state owns bit p-1 of the amplitude index, so
// position 1 is the least significant qubit. Every kernel works in place on
// any writable Eigen column expression with a std::complex scalar.

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace owqs {

template <typename Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

inline std::uint64_t insert_zero_bit(std::uint64_t value, unsigned bit) noexcept {
    const std::uint64_t low = value & ((std::uint64_t{1} << bit) - 1);
    return ((value >> bit) << (bit + 1)) | low;
}

inline unsigned qubit_count(Eigen::Index size) {
    unsigned m = 0;
    while ((Eigen::Index{1} << m) < size) ++m;
    if ((Eigen::Index{1} << m) != size) throw std::invalid_argument("amplitude count is not a power of two");
    return m;
}

inline void check_position(std::size_t pos, unsigned m) {
    if (pos < 1 || pos > m) {
        throw std::out_of_range("position " + std::to_string(pos) + " outside 1.." + std::to_string(m));
    }
}

}  // namespace detail

/// e^{i angle}, exact for integer multiples of pi/2 so that Pauli-angle
/// measurements do not pick up 1e-17 imaginary noise.
template <typename Scalar>
std::complex<Scalar> unit_phase(Scalar angle) {
    const Scalar quarter_turns = angle / (std::numbers::pi_v<Scalar> / 2);
    const Scalar nearest = std::nearbyint(quarter_turns);
    if (std::abs(quarter_turns - nearest) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                                                 std::max(Scalar(1), std::abs(nearest))) {
        switch (((static_cast<long long>(nearest) % 4) + 4) % 4) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }
    return std::polar(Scalar(1), angle);
}

/// Elements of the eliminating measurement operators
///   M_0 = |0><+a| = [[m00, m01], [0, 0]],  M_1 = |1><-a| = [[0, 0], [m10', m11']]
/// and of the projector P_0 = |+a><+a| they reproduce (M_i^dag M_i = P_i).
template <typename Scalar>
struct MeasurementOperators {
    using Complex = std::complex<Scalar>;

    Scalar angle{};
    Complex m00, m01;    // row 0 of M_0
    Complex m10p, m11p;  // row 1 of M_1
    Complex p00, p01, p10, p11;
    Complex down;  // e^{-i angle}

    static MeasurementOperators from_angle(Scalar angle) {
        const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
        const Complex down = std::conj(unit_phase(angle));  // e^{-i angle}
        MeasurementOperators ops;
        ops.angle = angle;
        ops.down = down;
        ops.m00 = Complex(r, 0);
        ops.m01 = down * r;
        ops.m10p = Complex(r, 0);
        ops.m11p = -down * r;
        ops.p00 = Complex(Scalar(0.5), 0);
        ops.p01 = down * Scalar(0.5);
        ops.p10 = std::conj(down) * Scalar(0.5);
        ops.p11 = Complex(Scalar(0.5), 0);
        return ops;
    }
};

/// Negates every amplitude whose index has both position bits set.
/// Touches exactly 2^(m-2) amplitudes.
template <typename Derived>
void apply_cz(Eigen::MatrixBase<Derived>& amps, std::size_t u_pos, std::size_t v_pos) {
    const unsigned m = detail::qubit_count(amps.size());
    detail::check_position(u_pos, m);
    detail::check_position(v_pos, m);
    if (u_pos == v_pos) throw std::invalid_argument("CZ needs two distinct positions");
    const unsigned lo = static_cast<unsigned>(std::min(u_pos, v_pos) - 1);
    const unsigned hi = static_cast<unsigned>(std::max(u_pos, v_pos) - 1);
    const std::uint64_t both = (std::uint64_t{1} << lo) | (std::uint64_t{1} << hi);
    const std::uint64_t count = static_cast<std::uint64_t>(amps.size()) >> 2;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t idx = detail::insert_zero_bit(detail::insert_zero_bit(i, lo), hi) | both;
        amps(static_cast<Eigen::Index>(idx)) = -amps(static_cast<Eigen::Index>(idx));
    }
}

/// Swaps the two halves selected by the position bit. 2^(m-1) swaps.
template <typename Derived>
void apply_x(Eigen::MatrixBase<Derived>& amps, std::size_t pos) {
    const unsigned m = detail::qubit_count(amps.size());
    detail::check_position(pos, m);
    const unsigned bit = static_cast<unsigned>(pos - 1);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t count = static_cast<std::uint64_t>(amps.size()) >> 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t j = detail::insert_zero_bit(i, bit);
        std::swap(amps(static_cast<Eigen::Index>(j)), amps(static_cast<Eigen::Index>(j | mask)));
    }
}

/// Negates the half whose position bit is set.
template <typename Derived>
void apply_z(Eigen::MatrixBase<Derived>& amps, std::size_t pos) {
    const unsigned m = detail::qubit_count(amps.size());
    detail::check_position(pos, m);
    const unsigned bit = static_cast<unsigned>(pos - 1);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t count = static_cast<std::uint64_t>(amps.size()) >> 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto idx = static_cast<Eigen::Index>(detail::insert_zero_bit(i, bit) | mask);
        amps(idx) = -amps(idx);
    }
}

/// <psi|P_0|psi> as the sum over index pairs of |a0 + e^{-i angle} a1|^2 / 2,
/// clamped to [0, 1].
template <typename Derived, typename Scalar = typename Derived::Scalar::value_type>
Scalar probability_zero(const Eigen::MatrixBase<Derived>& amps, std::size_t pos,
                        const MeasurementOperators<Scalar>& ops) {
    const unsigned m = detail::qubit_count(amps.size());
    detail::check_position(pos, m);
    const unsigned bit = static_cast<unsigned>(pos - 1);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t count = static_cast<std::uint64_t>(amps.size()) >> 1;
    const std::complex<Scalar> down = ops.down;
    Scalar acc = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t j = detail::insert_zero_bit(i, bit);
        acc += std::norm(amps(static_cast<Eigen::Index>(j)) + down * amps(static_cast<Eigen::Index>(j | mask)));
    }
    return std::clamp(acc / Scalar(2), Scalar(0), Scalar(1));
}

/// In-place compaction of a measured qubit:
///   amps[i] <- a * amps[j] + b * amps[j + 2^(pos-1)],  i in [0, 2^(m-1)),
/// with j the index of i after inserting a zero at the measured bit. Only the
/// first half of `amps` is meaningful afterwards; the caller truncates.
template <typename Derived>
void compact_measured(Eigen::MatrixBase<Derived>& amps, std::size_t pos, const typename Derived::Scalar& a,
                      const typename Derived::Scalar& b) {
    const unsigned m = detail::qubit_count(amps.size());
    detail::check_position(pos, m);
    const unsigned bit = static_cast<unsigned>(pos - 1);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::uint64_t count = static_cast<std::uint64_t>(amps.size()) >> 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t j = detail::insert_zero_bit(i, bit);
        // j >= i, so both reads come from slots not yet overwritten.
        amps(static_cast<Eigen::Index>(i)) =
            a * amps(static_cast<Eigen::Index>(j)) + b * amps(static_cast<Eigen::Index>(j | mask));
    }
}

}  // namespace owqs
