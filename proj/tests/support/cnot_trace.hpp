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

// Golden trace of the CNOT pattern on |q2 q1> = |11> with outcomes q2 -> 0,
// q3 -> 1. Each snapshot is compared exactly (no phase freedom).

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "owqs/engine.hpp"
#include "owqs/generators.hpp"

namespace owqs::testing {

inline InputStateSpec cnot_input_11() {
    InputStateSpec in;
    in.groups.push_back({{QubitId{1}}, Amplitudes<double>::Unit(2, 1)});
    in.groups.push_back({{QubitId{2}}, Amplitudes<double>::Unit(2, 1)});
    return in;
}

/// Empty when every step matches within `tol`.
inline std::vector<std::string> cnot_trace_mismatches(double tol = 1e-12) {
    using C = std::complex<double>;
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<std::string> bad;

    auto expect = [&](const StateSpace& space, std::vector<QubitId> order, std::vector<C> want,
                      const std::string& label) {
        if (!space.is_live(order.front())) {
            bad.push_back(label + ": qubit not live");
            return;
        }
        const SubState& s = space.substate(space.substate_of(order.front()));
        std::vector<QubitId> sorted_s = s.order;
        std::vector<QubitId> sorted_w = order;
        std::sort(sorted_s.begin(), sorted_s.end());
        std::sort(sorted_w.begin(), sorted_w.end());
        if (sorted_s != sorted_w) {
            bad.push_back(label + ": wrong qubit set");
            return;
        }
        const SubState aligned = permuted(s, order);
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (std::abs(aligned.amps(static_cast<Eigen::Index>(i)) - want[i]) > tol) {
                std::ostringstream os;
                os << label << ": amplitude " << i << " is " << aligned.amps(static_cast<Eigen::Index>(i));
                bad.push_back(os.str());
                return;
            }
        }
    };

    const QubitId q1{1}, q2{2}, q3{3}, q4{4};
    std::vector<std::string> seen;
    RunConfig cfg;
    cfg.policy = ForcedOutcomes{{0, 1}};
    cfg.trace = [&](const TraceEvent& e) {
        switch (e.kind) {
            case TraceKind::Load:
                seen.push_back("load");
                expect(e.space, {q1}, {0, 1}, "(a) q1");
                expect(e.space, {q2}, {0, 1}, "(a) q2");
                break;
            case TraceKind::Prepare:
                seen.push_back("prepare");
                expect(e.space, e.qubits, {h, h}, "(a) fresh |+>");
                break;
            case TraceKind::Entangle:
                seen.push_back("entangle");
                if (e.qubits == std::vector{q2, q3}) expect(e.space, {q2, q3}, {0, h, 0, -h}, "(b) E23");
                if (e.qubits == std::vector{q3, q4}) {
                    expect(e.space, {q1, q3, q4}, {0, 0.5, 0, 0.5, 0, 0.5, 0, -0.5}, "(d) E13 E34");
                }
                break;
            case TraceKind::Measure:
                seen.push_back("measure");
                if (std::abs(e.prob0 - 0.5) > tol) bad.push_back("measurement probability is not 1/2");
                if (e.qubits == std::vector{q2}) {
                    if (e.outcome != 0) bad.push_back("(c) outcome");
                    expect(e.space, {q3}, {h, -h}, "(c) M2");
                } else if (e.qubits == std::vector{q3}) {
                    if (e.outcome != 1) bad.push_back("(e) outcome");
                    expect(e.space, {q1, q4}, {0, 0, 0, 1}, "(e) M3");
                }
                break;
            case TraceKind::Correct:
                seen.push_back("correct");
                break;
            case TraceKind::Finish:
                seen.push_back("finish");
                expect(e.space, {q1, q4}, {0, 1, 0, 0}, "(f) output");
                break;
        }
    };
    const Pattern p = cnot_pattern();
    const RunResult r = run(p, tune_weights(p).plan, cnot_input_11(), cfg);

    const std::vector<std::string> steps{"load",    "prepare", "entangle", "measure", "entangle", "prepare",
                                         "entangle", "measure", "correct",  "correct", "correct",  "finish"};
    if (seen != steps) bad.push_back("unexpected event sequence");
    if (r.measurement_order != std::vector{q2, q3}) bad.push_back("measurement order");
    const SubState out = r.output_state();
    if (out.order != std::vector{q1, q4}) {
        bad.push_back("output order");
    } else {
        const std::vector<C> want{0, 1, 0, 0};
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::abs(out.amps(static_cast<Eigen::Index>(i)) - want[i]) > tol) bad.push_back("(f) final state");
        }
    }
    return bad;
}

}  // namespace owqs::testing
