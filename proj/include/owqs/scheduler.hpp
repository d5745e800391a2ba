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

// PROA: greedy reordering of a standard-form pattern so that every qubit's
// entanglements run right before its measurement.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owqs/pattern.hpp"

namespace owqs {

struct CostWeights {
    double w_ms = 1.0;
    double w_os = 1.0;
    double w_ss = 1.0;
    double w_flag = 1.0;

    /// Throws Error("usage") unless every weight is finite and >= 0.
    void check() const;
    friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

/// Quantities entering the cost of measuring one ready qubit next.
struct CostTerms {
    std::size_t ms = 0;  // measurement state-space size
    std::size_t os = 0;  // pending edges to outputs
    std::size_t ss = 0;  // distinct qubits reading this qubit's outcome
    bool flag = false;   // already attached to a merged multi-qubit group
};

double cost(const CostTerms& terms, const CostWeights& w);

struct ScheduleOptions {
    /// Groups the input qubits start in (one entry per input sub-state).
    /// Inputs not listed start alone.
    std::vector<std::vector<QubitId>> input_groups;
};

struct PlanStep {
    std::vector<Entangle> entangles;  // pending edges of the measured qubit, in pattern order
    Measure measure;
    std::vector<QubitId> measurement_space;  // sorted
    CostTerms terms;
};

struct ExecutionPlan {
    std::vector<PlanStep> steps;
    std::vector<Entangle> output_entangles;  // edges among outputs, applied after all measurements
    std::vector<Action> corrections;         // the source pattern's corrections, unchanged
    std::size_t predicted_peak = 0;
    CostWeights weights;

    std::vector<QubitId> measurement_order() const;
    std::vector<std::size_t> predicted_ms() const;
    std::size_t total_ms() const;
};

/// Greedy PROA. Throws Error("schedule") when no qubit is ready while
/// measurements remain.
ExecutionPlan reorder(const Pattern& p, const CostWeights& weights, const ScheduleOptions& options = {});

/// Builds the plan for a fixed measurement order, with the same bookkeeping
/// as reorder. Throws Error("schedule") if the order breaks a dependency or
/// does not list every measured qubit exactly once.
ExecutionPlan plan_from_order(const Pattern& p, const std::vector<QubitId>& order,
                              const ScheduleOptions& options = {});

struct TunedPlan {
    CostWeights weights;
    ExecutionPlan plan;
    std::size_t iteration = 0;
};

/// Starts from (|O|, |O|, 0.5, |O|) and lowers w_ms by one per iteration for
/// |O| iterations; keeps the smallest predicted peak (ties: smaller total MS,
/// then earlier iteration). |O| = 0 is treated as 1.
TunedPlan tune_weights(const Pattern& p, const ScheduleOptions& options = {});

/// E * K^2 with E entanglements and K measured qubits.
std::uint64_t plan_complexity_guard(const Pattern& p);

/// Coverage and dependency problems of `plan` against `p`; empty when sound.
std::vector<std::string> verify_plan(const Pattern& p, const ExecutionPlan& plan);

}  // namespace owqs
