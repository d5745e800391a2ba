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

#include <complex>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <variant>
#include <vector>

#include "owqs/substate.hpp"
#include "owqs/types.hpp"

namespace owqs {

/// Outcome 0 iff u <= prob0. `u` must lie in (0, 1].
struct RandomDraw {
    double u = 1.0;
};
struct ForcedOutcome {
    int bit = 0;
};
/// Outcome 0 without computing its probability; rescales by sqrt(2).
struct PositiveBranch {};

using OutcomeChoice = std::variant<RandomDraw, ForcedOutcome, PositiveBranch>;

struct MeasureResult {
    int outcome = 0;
    double prob0 = -1.0;  // -1 when the probability was not computed
};

struct KernelCounters {
    std::uint64_t cz_flips = 0;
    std::uint64_t x_swaps = 0;
    std::uint64_t z_flips = 0;
    std::uint64_t probability_pairs = 0;
    std::uint64_t compaction_writes = 0;
    std::uint64_t merges = 0;
};

struct SpaceStats {
    std::size_t m_peak = 0;
    KernelCounters ops;
    std::size_t norm_warnings = 0;
    /// Leftover phase of every sub-state whose last qubit was measured away.
    std::vector<std::complex<double>> discarded_phases;
};

/// Disjoint sub-states covering every live (prepared, unmeasured) qubit.
/// Single writer; no internal locking.
class StateSpace {
   public:
    using SubStateId = std::uint32_t;

    static constexpr double kNormTolerance = 1e-9;
    static constexpr double kImpossibleBranch = 1e-12;

    /// Adds a fresh |+> sub-state for `v`.
    SubStateId prepare_plus(QubitId v);
    /// Adds an externally supplied sub-state (input groups).
    SubStateId load(SubState s);
    /// Replaces `a` and `b` by their tensor product, `a` in the low positions.
    SubStateId merge(SubStateId a, SubStateId b);

    /// CZ between two live qubits, merging their sub-states first if needed.
    void entangle(QubitId u, QubitId v);
    void correct_x(QubitId v);
    void correct_z(QubitId v);
    /// Measures `v` at `angle` and removes it from the state.
    MeasureResult measure_eliminate(QubitId v, double angle, const OutcomeChoice& choice);

    bool is_live(QubitId q) const { return locator_.contains(q); }
    SubStateId substate_of(QubitId q) const;
    std::size_t position_of(QubitId q) const;
    const SubState& substate(SubStateId id) const;
    bool has_substate(SubStateId id) const { return substates_.contains(id); }
    std::vector<SubStateId> substate_ids() const;
    std::size_t live_count() const noexcept { return locator_.size(); }

    /// Counts a warning when the sub-state norm drifted beyond kNormTolerance.
    bool check_norm(SubStateId id);

    const SpaceStats& stats() const noexcept { return stats_; }

   private:
    struct Location {
        SubStateId id;
        std::size_t pos;
    };

    SubStateId insert(SubState s);
    SubState& mutable_substate(SubStateId id);
    const Location& locate(QubitId q) const;

    std::map<SubStateId, SubState> substates_;
    std::unordered_map<QubitId, Location> locator_;
    SubStateId next_id_ = 0;
    SpaceStats stats_;
};

}  // namespace owqs
