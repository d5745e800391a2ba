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

#include "owqs/generators.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "owqs/gflow.hpp"

namespace owqs {

Pattern generate_cluster(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw Error("usage", "cluster dimensions must be positive");
    auto id = [rows](std::size_t r, std::size_t c) { return QubitId{static_cast<std::uint32_t>((c - 1) * rows + r)}; };

    OpenGraph og;
    for (std::size_t c = 1; c <= cols; ++c) {
        for (std::size_t r = 1; r <= rows; ++r) og.graph.vertices.push_back(id(r, c));
    }
    for (std::size_t c = 1; c <= cols; ++c) {
        for (std::size_t r = 1; r <= rows; ++r) {
            if (r < rows) og.graph.edges.emplace_back(id(r, c), id(r + 1, c));
            if (c < cols) og.graph.edges.emplace_back(id(r, c), id(r, c + 1));
        }
    }
    for (std::size_t r = 1; r <= rows; ++r) {
        og.inputs.push_back(id(r, 1));
        og.outputs.push_back(id(r, cols));
    }

    GFlow flow;
    for (std::size_t c = 1; c <= cols; ++c) {
        for (std::size_t r = 1; r <= rows; ++r) {
            flow.layering[id(r, c)] = cols - c;
            if (c < cols) flow.correction_sets[id(r, c)] = {id(r, c + 1)};
        }
    }
    return pattern_from_gflow(og, flow, {});
}

Pattern generate_linear(std::size_t length) { return generate_cluster(1, length); }

AngleSet parse_angle_set(std::string_view name) {
    if (name == "zero") return AngleSet::Zero;
    if (name == "pauli") return AngleSet::Pauli;
    if (name == "uniform" || name == "random") return AngleSet::Uniform;
    throw Error("usage", "unknown angle set '" + std::string(name) + "' (zero, pauli, uniform)");
}

namespace {

double draw_angle(AngleSet set, std::mt19937_64& rng) {
    switch (set) {
        case AngleSet::Zero: return 0.0;
        case AngleSet::Pauli: return static_cast<double>(rng() % 4) * std::numbers::pi / 2;
        case AngleSet::Uniform: return std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng);
    }
    return 0.0;
}

QubitId label(std::size_t k) { return QubitId{static_cast<std::uint32_t>(k + 1)}; }

}  // namespace

Pattern generate_random(const RandomPatternSpec& spec) {
    if (spec.n == 0) throw Error("usage", "random patterns need at least one qubit");
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw Error("usage", "edge density must lie in [0, 1]");
    std::mt19937_64 rng(spec.seed);
    std::bernoulli_distribution extra(spec.density);

    OpenGraph og;
    for (std::size_t k = 0; k < spec.n; ++k) og.graph.vertices.push_back(label(k));
    std::set<Edge> edges;
    for (std::size_t k = 1; k < spec.n; ++k) edges.emplace(label(rng() % k), label(k));
    for (std::size_t a = 0; a < spec.n; ++a) {
        for (std::size_t b = a + 1; b < spec.n; ++b) {
            if (extra(rng)) edges.emplace(label(a), label(b));
        }
    }
    og.graph.edges.assign(edges.begin(), edges.end());

    std::map<QubitId, double> angles;
    for (QubitId q : og.graph.vertices) angles[q] = draw_angle(spec.angles, rng);

    constexpr int kTriesPerSize = 16;
    std::vector<QubitId> shuffled = og.graph.vertices;
    for (std::size_t outputs = std::max<std::size_t>(1, spec.n / 4); outputs <= spec.n; ++outputs) {
        for (int attempt = 0; attempt < kTriesPerSize; ++attempt) {
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            og.outputs.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(outputs));
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const std::size_t inputs = rng() % (outputs + 1);
            og.inputs.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(inputs));
            std::sort(og.outputs.begin(), og.outputs.end());
            std::sort(og.inputs.begin(), og.inputs.end());

            if (const auto flow = find_gflow(og)) return pattern_from_gflow(og, *flow, angles);
            if (spec.allow_nogflow) {
                Pattern p;
                p.qubits = og.graph.vertices;
                p.inputs = og.inputs;
                p.outputs = og.outputs;
                for (const Edge& e : og.graph.edges) p.actions.emplace_back(Entangle{e.a, e.b});
                for (QubitId q : og.measured()) p.actions.emplace_back(Measure{q, angles[q], {}, {}});
                return p;
            }
        }
    }
    throw Error("generation", "no gflow found for any output set");
}

Pattern cnot_pattern() {
    using namespace literals;
    Pattern p;
    p.qubits = {1_q, 2_q, 3_q, 4_q};
    p.inputs = {1_q, 2_q};
    p.outputs = {1_q, 4_q};
    p.actions = {
        Entangle{1_q, 3_q},
        Entangle{2_q, 3_q},
        Entangle{3_q, 4_q},
        Measure{2_q, 0.0, {}, {}},
        Measure{3_q, 0.0, {}, {}},
        CorrectZ{1_q, Signal{2_q}},
        CorrectZ{4_q, Signal{2_q}},
        CorrectX{4_q, Signal{3_q}},
    };
    return p;
}

Pattern swap_pattern() {
    using namespace literals;
    OpenGraph og;
    for (std::uint32_t q = 1; q <= 8; ++q) og.graph.vertices.push_back(QubitId{q});
    for (auto [a, b] : {std::pair{2_q, 3_q}, {1_q, 3_q}, {3_q, 4_q}, {1_q, 5_q}, {4_q, 7_q}, {5_q, 6_q}, {7_q, 8_q}}) {
        og.graph.edges.emplace_back(a, b);
    }
    og.inputs = {2_q, 4_q};
    og.outputs = {6_q, 8_q};
    const auto flow = find_gflow(og);
    if (!flow) throw Error("generation", "SWAP graph lost its gflow");
    return pattern_from_gflow(og, *flow, {});
}

}  // namespace owqs
