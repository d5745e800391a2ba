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

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "owqs/kernels.hpp"
#include "owqs/types.hpp"

namespace owqs {

/// Amplitudes of a group of qubits that is unentangled with every other
/// group. `order[p-1]` is the qubit at position p.
template <typename Scalar>
struct BasicSubState {
    Amplitudes<Scalar> amps;
    std::vector<QubitId> order;

    BasicSubState() : amps(Amplitudes<Scalar>::Ones(1)) {}
    BasicSubState(std::vector<QubitId> qubits, Amplitudes<Scalar> values)
        : amps(std::move(values)), order(std::move(qubits)) {
        if (amps.size() != (Eigen::Index{1} << order.size())) {
            throw std::invalid_argument("sub-state needs 2^m amplitudes");
        }
    }

    std::size_t qubit_count() const noexcept { return order.size(); }

    /// 1-based position of `q`, if present.
    std::optional<std::size_t> position_of(QubitId q) const {
        auto it = std::find(order.begin(), order.end(), q);
        if (it == order.end()) return std::nullopt;
        return static_cast<std::size_t>(it - order.begin()) + 1;
    }

    Scalar norm_squared() const { return amps.squaredNorm(); }
};

using SubState = BasicSubState<double>;

/// Kronecker product with `low` keeping positions 1..m_low and `high`'s
/// qubits appended above them.
template <typename Scalar>
BasicSubState<Scalar> tensor(const BasicSubState<Scalar>& low, const BasicSubState<Scalar>& high) {
    BasicSubState<Scalar> out;
    out.order = low.order;
    out.order.insert(out.order.end(), high.order.begin(), high.order.end());
    const Eigen::Index nl = low.amps.size();
    out.amps.resize(nl * high.amps.size());
    for (Eigen::Index h = 0; h < high.amps.size(); ++h) {
        out.amps.segment(h * nl, nl) = high.amps(h) * low.amps;
    }
    return out;
}

/// Re-lays the amplitudes so that `target` (a permutation of `s.order`) becomes
/// the new position order.
template <typename Scalar>
BasicSubState<Scalar> permuted(const BasicSubState<Scalar>& s, const std::vector<QubitId>& target) {
    if (target.size() != s.order.size()) throw std::invalid_argument("permutation size mismatch");
    // source bit of each target bit
    std::vector<unsigned> from(target.size());
    for (std::size_t k = 0; k < target.size(); ++k) {
        auto pos = s.position_of(target[k]);
        if (!pos) throw std::invalid_argument("permutation names a foreign qubit");
        from[k] = static_cast<unsigned>(*pos - 1);
    }
    BasicSubState<Scalar> out;
    out.order = target;
    out.amps.resize(s.amps.size());
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(s.amps.size()); ++i) {
        std::uint64_t src = 0;
        for (std::size_t k = 0; k < from.size(); ++k) src |= ((i >> k) & 1u) << from[k];
        out.amps(static_cast<Eigen::Index>(i)) = s.amps(static_cast<Eigen::Index>(src));
    }
    return out;
}

template <typename Scalar>
BasicSubState<Scalar> sorted_by_id(const BasicSubState<Scalar>& s) {
    std::vector<QubitId> target = s.order;
    std::sort(target.begin(), target.end());
    return permuted(s, target);
}

/// True iff some unit complex c gives max|a - c b| <= tol. `b` is aligned to
/// `a`'s qubit order first; c is read off b's largest amplitude.
template <typename Scalar>
bool states_equal_up_to_phase(const BasicSubState<Scalar>& a, const BasicSubState<Scalar>& b, Scalar tol) {
    std::vector<QubitId> qa = a.order;
    std::vector<QubitId> qb = b.order;
    std::sort(qa.begin(), qa.end());
    std::sort(qb.begin(), qb.end());
    if (qa != qb) throw std::invalid_argument("states cover different qubits");
    const BasicSubState<Scalar> aligned = permuted(b, a.order);
    Eigen::Index k = 0;
    aligned.amps.cwiseAbs().maxCoeff(&k);
    std::complex<Scalar> c(1, 0);
    if (std::abs(aligned.amps(k)) > Scalar(0)) {
        const std::complex<Scalar> ratio = a.amps(k) / aligned.amps(k);
        if (std::abs(ratio) == Scalar(0)) return (a.amps - aligned.amps).cwiseAbs().maxCoeff() <= tol;
        c = ratio / std::abs(ratio);
    }
    return (a.amps - c * aligned.amps).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace owqs
