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

// Random inputs and engine/oracle comparison helpers shared by the tests.

#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "owqs/engine.hpp"
#include "owqs/oracle.hpp"

namespace owqs::testing {

inline Amplitudes<double> random_amplitudes(std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Amplitudes<double> amps(Eigen::Index{1} << m);
    for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = {gauss(rng), gauss(rng)};
    amps /= amps.norm();
    return amps;
}

/// Inputs split into random groups of at most three qubits, each group in a
/// random order with random amplitudes.
inline InputStateSpec random_input(const Pattern& p, std::mt19937_64& rng) {
    std::vector<QubitId> inputs = p.inputs;
    std::shuffle(inputs.begin(), inputs.end(), rng);
    InputStateSpec spec;
    std::size_t k = 0;
    while (k < inputs.size()) {
        const std::size_t size = std::min<std::size_t>(1 + rng() % 3, inputs.size() - k);
        InputGroup g;
        g.qubits.assign(inputs.begin() + static_cast<std::ptrdiff_t>(k),
                        inputs.begin() + static_cast<std::ptrdiff_t>(k + size));
        g.amps = random_amplitudes(size, rng);
        spec.groups.push_back(std::move(g));
        k += size;
    }
    return spec;
}

/// Engine output with the discarded global phases multiplied back in.
inline SubState full_output(const RunResult& r) {
    SubState out = r.output_state();
    for (const std::complex<double>& c : r.stats.discarded_phases) out.amps *= c;
    return out;
}

inline SubState as_substate(const oracle::DenseState& d) { return SubState(d.qubits, d.amps); }

/// Largest per-amplitude deviation after aligning the qubit orders.
inline double max_deviation(const SubState& a, const SubState& b) {
    const SubState aligned = permuted(b, a.order);
    return (a.amps - aligned.amps).cwiseAbs().maxCoeff();
}

/// Forced bits for the engine (plan order) taken from a per-qubit map.
inline std::vector<int> plan_bits(const ExecutionPlan& plan, const std::map<QubitId, int>& by_qubit) {
    std::vector<int> bits;
    for (QubitId q : plan.measurement_order()) bits.push_back(by_qubit.at(q));
    return bits;
}

inline std::map<QubitId, int> random_branch(const Pattern& p, std::mt19937_64& rng) {
    std::map<QubitId, int> bits;
    for (QubitId q : measurement_order(p)) bits[q] = static_cast<int>(rng() % 2);
    return bits;
}

}  // namespace owqs::testing
