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

#include "owqs/gflow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "owqs/gf2.hpp"

namespace owqs {

OpenGraph OpenGraph::from_pattern(const Pattern& p) {
    return OpenGraph{entanglement_graph(p), p.inputs, p.outputs};
}

std::vector<QubitId> OpenGraph::measured() const {
    std::vector<QubitId> out;
    std::set_difference(graph.vertices.begin(), graph.vertices.end(), outputs.begin(), outputs.end(),
                        std::back_inserter(out));
    return out;
}

std::size_t GFlow::layer_count() const {
    std::set<std::size_t> layers;
    for (const auto& [q, layer] : layering) layers.insert(layer);
    return layers.size();
}

std::vector<QubitId> GFlow::measurement_order() const {
    std::vector<QubitId> order;
    for (const auto& [q, g] : correction_sets) order.push_back(q);
    std::stable_sort(order.begin(), order.end(),
                     [&](QubitId a, QubitId b) { return layering.at(a) > layering.at(b); });
    return order;
}

namespace {

/// Vertex indexing and adjacency rows for one graph.
struct Indexed {
    std::vector<QubitId> vertices;
    std::vector<gf2::BitVector> adjacency;

    explicit Indexed(const EntanglementGraph& g) : vertices(g.vertices) {
        adjacency.assign(vertices.size(), gf2::BitVector(vertices.size()));
        for (const Edge& e : g.edges) {
            const std::size_t a = index(e.a);
            const std::size_t b = index(e.b);
            adjacency[a].set(b);
            adjacency[b].set(a);
        }
    }

    std::size_t index(QubitId q) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), q);
        if (it == vertices.end() || *it != q) {
            throw Error("graph", "qubit " + std::to_string(to_int(q)) + " is not a vertex");
        }
        return static_cast<std::size_t>(it - vertices.begin());
    }
};

bool contains(const std::vector<QubitId>& sorted, QubitId q) {
    return std::binary_search(sorted.begin(), sorted.end(), q);
}

}  // namespace

std::vector<QubitId> odd_neighborhood(const EntanglementGraph& g, const std::vector<QubitId>& set) {
    const std::set<QubitId> members(set.begin(), set.end());
    std::map<QubitId, int> hits;
    for (const Edge& e : g.edges) {
        if (members.contains(e.a)) hits[e.b] ^= 1;
        if (members.contains(e.b)) hits[e.a] ^= 1;
    }
    std::vector<QubitId> out;
    for (const auto& [q, odd] : hits) {
        if (odd) out.push_back(q);
    }
    return out;
}

std::optional<GFlow> find_gflow(const OpenGraph& og) {
    const Indexed ix(og.graph);
    const std::size_t n = ix.vertices.size();
    std::vector<bool> assigned(n, false);
    std::vector<bool> input(n, false);
    for (QubitId q : og.inputs) input[ix.index(q)] = true;

    GFlow flow;
    std::vector<std::size_t> unassigned;
    for (std::size_t v = 0; v < n; ++v) {
        if (contains(og.outputs, ix.vertices[v])) {
            assigned[v] = true;
            flow.layering[ix.vertices[v]] = 0;
        } else {
            unassigned.push_back(v);
        }
    }

    for (std::size_t layer = 1; !unassigned.empty(); ++layer) {
        std::vector<std::size_t> candidates;
        for (std::size_t v = 0; v < n; ++v) {
            if (assigned[v] && !input[v]) candidates.push_back(v);
        }
        // Row w, column c: is w adjacent to candidate c. A solution x picks
        // g with Odd(g) restricted to the unassigned vertices.
        gf2::Matrix a(unassigned.size(), candidates.size());
        for (std::size_t r = 0; r < unassigned.size(); ++r) {
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (ix.adjacency[unassigned[r]].get(candidates[c])) a.set(r, c);
            }
        }
        const gf2::UnitSolver solver(a);

        std::vector<std::size_t> still;
        std::vector<std::size_t> solved;
        for (std::size_t r = 0; r < unassigned.size(); ++r) {
            const auto x = solver.solve_unit(r);
            if (!x) {
                still.push_back(unassigned[r]);
                continue;
            }
            solved.push_back(unassigned[r]);
            std::vector<QubitId> g;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (x->get(c)) g.push_back(ix.vertices[candidates[c]]);
            }
            const QubitId v = ix.vertices[unassigned[r]];
            flow.correction_sets[v] = std::move(g);
            flow.layering[v] = layer;
        }
        if (solved.empty()) return std::nullopt;
        for (std::size_t v : solved) assigned[v] = true;
        unassigned = std::move(still);
    }
    return flow;
}

bool verify_gflow(const OpenGraph& og, const GFlow& flow) {
    auto layer_of = [&](QubitId q) -> std::optional<std::size_t> {
        auto it = flow.layering.find(q);
        if (it != flow.layering.end()) return it->second;
        if (contains(og.outputs, q)) return 0;
        return std::nullopt;
    };
    const std::vector<QubitId> measured = og.measured();
    if (flow.correction_sets.size() != measured.size()) return false;
    for (QubitId v : measured) {
        auto it = flow.correction_sets.find(v);
        const auto lv = layer_of(v);
        if (it == flow.correction_sets.end() || !lv) return false;
        const std::vector<QubitId>& g = it->second;
        for (QubitId u : g) {
            if (u == v || !contains(og.graph.vertices, u) || contains(og.inputs, u)) return false;
            const auto lu = layer_of(u);
            if (!lu || *lu >= *lv) return false;
        }
        const std::vector<QubitId> odd = odd_neighborhood(og.graph, g);
        if (!contains(odd, v)) return false;
        for (QubitId w : odd) {
            if (w == v || contains(og.outputs, w)) continue;
            const auto lw = layer_of(w);
            if (!lw || *lw >= *lv) return false;
        }
    }
    return true;
}

Pattern pattern_from_gflow(const OpenGraph& og, const GFlow& flow, const std::map<QubitId, double>& angles) {
    Pattern p;
    p.qubits = og.graph.vertices;
    p.inputs = og.inputs;
    p.outputs = og.outputs;

    const std::vector<QubitId> order = flow.measurement_order();
    std::map<QubitId, Measure> measures;
    for (QubitId v : order) {
        auto it = angles.find(v);
        measures[v] = Measure{v, it == angles.end() ? 0.0 : it->second, {}, {}};
    }
    std::map<QubitId, Signal> x_fix;
    std::map<QubitId, Signal> z_fix;
    for (QubitId v : order) {
        const std::vector<QubitId>& g = flow.correction_sets.at(v);
        for (QubitId u : g) {
            if (measures.contains(u)) {
                measures[u].s.toggle(v);
            } else {
                x_fix[u].toggle(v);
            }
        }
        for (QubitId w : odd_neighborhood(og.graph, g)) {
            if (w == v) continue;
            if (measures.contains(w)) {
                measures[w].t.toggle(v);
            } else {
                z_fix[w].toggle(v);
            }
        }
    }

    for (const Edge& e : og.graph.edges) p.actions.emplace_back(Entangle{e.a, e.b});
    for (QubitId v : order) p.actions.emplace_back(measures[v]);
    for (QubitId o : og.outputs) {
        if (!x_fix[o].empty()) p.actions.emplace_back(CorrectX{o, x_fix[o]});
        if (!z_fix[o].empty()) p.actions.emplace_back(CorrectZ{o, z_fix[o]});
    }
    return p;
}

namespace {

bool is_pauli_x_angle(double angle) {
    const double r = std::remainder(angle, std::numbers::pi);
    return std::abs(r) <= 1e-12;
}

struct SignalSummary {
    std::map<QubitId, Signal> s;
    std::map<QubitId, Signal> t;
    std::map<QubitId, Signal> x;
    std::map<QubitId, Signal> z;
};

SignalSummary summarize(const Pattern& p) {
    SignalSummary out;
    auto fold = [](Signal& into, const Signal& from) {
        for (QubitId q : from.terms()) into.toggle(q);
    };
    for (const Action& a : p.actions) {
        if (const auto* m = std::get_if<Measure>(&a)) {
            if (!is_pauli_x_angle(m->angle)) fold(out.s[m->qubit], m->s);
            fold(out.t[m->qubit], m->t);
        } else if (const auto* x = std::get_if<CorrectX>(&a)) {
            fold(out.x[x->qubit], x->signal);
        } else if (const auto* z = std::get_if<CorrectZ>(&a)) {
            fold(out.z[z->qubit], z->signal);
        }
    }
    auto prune = [](std::map<QubitId, Signal>& m) { std::erase_if(m, [](const auto& kv) { return kv.second.empty(); }); };
    prune(out.s);
    prune(out.t);
    prune(out.x);
    prune(out.z);
    return out;
}

}  // namespace

bool signals_match_gflow(const Pattern& p, const GFlow& flow) {
    const OpenGraph og = OpenGraph::from_pattern(p);
    std::map<QubitId, double> angles;
    for (const Action& a : p.actions) {
        if (const auto* m = std::get_if<Measure>(&a)) angles[m->qubit] = m->angle;
    }
    const SignalSummary have = summarize(p);
    const SignalSummary want = summarize(pattern_from_gflow(og, flow, angles));
    return have.s == want.s && have.t == want.t && have.x == want.x && have.z == want.z;
}

}  // namespace owqs
