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

// Runs an execution plan against a StateSpace.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "owqs/pattern.hpp"
#include "owqs/scheduler.hpp"
#include "owqs/state_space.hpp"

namespace owqs {

/// Recorded outcomes s_v of the qubits measured so far.
struct SignalTable {
    std::map<QubitId, int> outcomes;

    void record(QubitId q, int bit);
    bool has(QubitId q) const { return outcomes.contains(q); }
};

/// XOR of the referenced outcomes. Throws Error("engine") on a term that has
/// not been measured yet.
int eval_signal(const Signal& s, const SignalTable& table);

/// (-1)^s * base + t * pi.
double resolve_angle(double base, int s, int t);

/// One factor of the input state: amplitudes over `qubits` (position 1 first).
struct InputGroup {
    std::vector<QubitId> qubits;
    Amplitudes<double> amps;
};

struct InputStateSpec {
    std::vector<InputGroup> groups;

    /// Every input qubit in its own |+> state.
    static InputStateSpec plus(const Pattern& p);
    /// Each input qubit in |bit>, bit k of `bits` for the k-th input (ascending id).
    static InputStateSpec basis(const Pattern& p, std::uint64_t bits);

    /// Throws Error("input") unless the groups partition I and each is normalized.
    void check(const Pattern& p) const;
    ScheduleOptions schedule_options() const;
};

enum class Mode { Owqs, Eowqs };

struct RandomOutcomes {
    std::uint64_t seed = 0;
};
/// Outcome bits in plan measurement order.
struct ForcedOutcomes {
    std::vector<int> bits;
};
struct PositiveOutcomes {};

using OutcomePolicy = std::variant<RandomOutcomes, ForcedOutcomes, PositiveOutcomes>;

enum class TraceKind { Load, Prepare, Entangle, Measure, Correct, Finish };

struct TraceEvent {
    TraceKind kind;
    std::vector<QubitId> qubits;
    int outcome = 0;       // Measure: recorded bit; Correct: 1 iff applied
    double prob0 = -1.0;   // Measure only
    double angle = 0.0;    // Measure: resolved angle
    const StateSpace& space;
};

struct RunConfig {
    Mode mode = Mode::Owqs;
    OutcomePolicy policy = RandomOutcomes{};
    std::function<void(const TraceEvent&)> trace;
};

struct RunStats {
    std::size_t m_peak = 0;
    std::size_t predicted_peak = 0;
    std::vector<double> probs;  // per measurement in plan order; -1 when not computed
    KernelCounters ops;
    double wall_ms = 0.0;
    std::size_t norm_warnings = 0;
    std::vector<std::complex<double>> discarded_phases;
    std::vector<std::string> warnings;
};

struct RunResult {
    /// Output factors, each sorted by ascending id; factors ordered by their
    /// smallest qubit.
    std::vector<SubState> output_factors;
    SignalTable outcomes;
    std::vector<QubitId> measurement_order;
    ExecutionPlan plan;
    RunStats stats;

    /// Tensor product of all factors over O in ascending id order.
    SubState output_state() const;
};

/// Executes `plan` (derived from `p`). Throws Error on kernel failures,
/// a mis-sized forced sequence or a plan that does not fit the pattern.
RunResult run(const Pattern& p, const ExecutionPlan& plan, const InputStateSpec& input, const RunConfig& cfg);

/// Tunes the PROA weights for `p` and runs the resulting plan.
RunResult run_owqs(const Pattern& p, const InputStateSpec& input, const RunConfig& cfg);

struct IncorrectPattern {
    std::string message;
};

/// Positive-branch simulation of a pattern gated by a gflow check. Signals
/// are dropped before scheduling.
std::variant<RunResult, IncorrectPattern> run_eowqs(const Pattern& p, const InputStateSpec& input,
                                                    std::function<void(const TraceEvent&)> trace = {});

/// Plan used by run_eowqs: the tuned plan of the signal-free pattern, or the
/// signal-free replay of the tuned OWQS order when that predicts a smaller peak.
ExecutionPlan eowqs_plan(const Pattern& p, const ScheduleOptions& options = {});

}  // namespace owqs
