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

#include "owqs/state_space.hpp"

#include <cmath>
#include <string>

namespace owqs {

namespace {

std::string qubit_name(QubitId q) { return "qubit " + std::to_string(to_int(q)); }

}  // namespace

StateSpace::SubStateId StateSpace::insert(SubState s) {
    const SubStateId id = next_id_++;
    for (std::size_t p = 0; p < s.order.size(); ++p) {
        const QubitId q = s.order[p];
        if (locator_.contains(q)) throw Error("kernel", qubit_name(q) + " is already live");
        locator_[q] = Location{id, p + 1};
    }
    stats_.m_peak = std::max(stats_.m_peak, s.order.size());
    substates_.emplace(id, std::move(s));
    return id;
}

StateSpace::SubStateId StateSpace::prepare_plus(QubitId v) {
    if (is_live(v)) throw Error("kernel", qubit_name(v) + " is already live");
    Amplitudes<double> plus(2);
    plus.setConstant(std::complex<double>(1.0 / std::sqrt(2.0), 0.0));
    return insert(SubState({v}, std::move(plus)));
}

StateSpace::SubStateId StateSpace::load(SubState s) {
    for (QubitId q : s.order) {
        if (is_live(q)) throw Error("kernel", qubit_name(q) + " is already live");
    }
    return insert(std::move(s));
}

StateSpace::SubStateId StateSpace::merge(SubStateId a, SubStateId b) {
    if (a == b) throw Error("kernel", "cannot merge a sub-state with itself");
    SubState merged = tensor(substate(a), substate(b));
    for (QubitId q : merged.order) {
        if (locator_.at(q).id != a && locator_.at(q).id != b) {
            throw Error("kernel", "locator out of sync for " + qubit_name(q));
        }
        locator_.erase(q);
    }
    substates_.erase(a);
    substates_.erase(b);
    ++stats_.ops.merges;
    return insert(std::move(merged));
}

const StateSpace::Location& StateSpace::locate(QubitId q) const {
    auto it = locator_.find(q);
    if (it == locator_.end()) throw Error("kernel", qubit_name(q) + " is not live");
    return it->second;
}

StateSpace::SubStateId StateSpace::substate_of(QubitId q) const { return locate(q).id; }
std::size_t StateSpace::position_of(QubitId q) const { return locate(q).pos; }

const SubState& StateSpace::substate(SubStateId id) const {
    auto it = substates_.find(id);
    if (it == substates_.end()) throw Error("kernel", "unknown sub-state " + std::to_string(id));
    return it->second;
}

SubState& StateSpace::mutable_substate(SubStateId id) {
    return const_cast<SubState&>(static_cast<const StateSpace&>(*this).substate(id));
}

std::vector<StateSpace::SubStateId> StateSpace::substate_ids() const {
    std::vector<SubStateId> ids;
    ids.reserve(substates_.size());
    for (const auto& [id, s] : substates_) ids.push_back(id);
    return ids;
}

void StateSpace::entangle(QubitId u, QubitId v) {
    if (u == v) throw Error("kernel", "cannot entangle " + qubit_name(u) + " with itself");
    SubStateId su = substate_of(u);
    SubStateId sv = substate_of(v);
    if (su != sv) su = merge(su, sv);
    SubState& s = mutable_substate(su);
    apply_cz(s.amps, position_of(u), position_of(v));
    stats_.ops.cz_flips += static_cast<std::uint64_t>(s.amps.size() / 4);
}

void StateSpace::correct_x(QubitId v) {
    const Location loc = locate(v);
    SubState& s = mutable_substate(loc.id);
    apply_x(s.amps, loc.pos);
    stats_.ops.x_swaps += static_cast<std::uint64_t>(s.amps.size() / 2);
}

void StateSpace::correct_z(QubitId v) {
    const Location loc = locate(v);
    SubState& s = mutable_substate(loc.id);
    apply_z(s.amps, loc.pos);
    stats_.ops.z_flips += static_cast<std::uint64_t>(s.amps.size() / 2);
}

MeasureResult StateSpace::measure_eliminate(QubitId v, double angle, const OutcomeChoice& choice) {
    const Location loc = locate(v);
    SubState& s = mutable_substate(loc.id);
    const auto ops = MeasurementOperators<double>::from_angle(angle);
    const auto half = s.amps.size() / 2;

    MeasureResult result;
    std::complex<double> a;
    std::complex<double> b;
    if (std::holds_alternative<PositiveBranch>(choice)) {
        const double root2 = std::sqrt(2.0);
        a = ops.m00 * root2;
        b = ops.m01 * root2;
    } else {
        result.prob0 = probability_zero(s.amps, loc.pos, ops);
        stats_.ops.probability_pairs += static_cast<std::uint64_t>(half);
        if (const auto* forced = std::get_if<ForcedOutcome>(&choice)) {
            result.outcome = forced->bit ? 1 : 0;
            const double p = result.outcome ? 1.0 - result.prob0 : result.prob0;
            if (p < kImpossibleBranch) {
                throw Error("simulation", "forced outcome " + std::to_string(result.outcome) + " on " +
                                              qubit_name(v) + " has probability " + std::to_string(p));
            }
        } else {
            result.outcome = std::get<RandomDraw>(choice).u <= result.prob0 ? 0 : 1;
            // A draw can only land in a ~0 probability branch through the clamp.
            if ((result.outcome ? 1.0 - result.prob0 : result.prob0) < kImpossibleBranch) {
                result.outcome ^= 1;
            }
        }
        if (result.outcome == 0) {
            const double scale = 1.0 / std::sqrt(result.prob0);
            a = ops.m00 * scale;
            b = ops.m01 * scale;
        } else {
            const double scale = 1.0 / std::sqrt(1.0 - result.prob0);
            a = ops.m10p * scale;
            b = ops.m11p * scale;
        }
    }

    compact_measured(s.amps, loc.pos, a, b);
    s.amps.conservativeResize(half);
    stats_.ops.compaction_writes += static_cast<std::uint64_t>(half);

    s.order.erase(s.order.begin() + static_cast<std::ptrdiff_t>(loc.pos - 1));
    locator_.erase(v);
    for (std::size_t p = loc.pos; p <= s.order.size(); ++p) locator_[s.order[p - 1]].pos = p;

    if (s.order.empty()) {
        stats_.discarded_phases.push_back(s.amps(0));
        substates_.erase(loc.id);
    }
    return result;
}

bool StateSpace::check_norm(SubStateId id) {
    const double n = substate(id).norm_squared();
    if (std::abs(n - 1.0) > kNormTolerance) {
        ++stats_.norm_warnings;
        return false;
    }
    return true;
}

}  // namespace owqs
