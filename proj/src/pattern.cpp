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

#include "owqs/pattern.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace owqs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool sorted_contains(const std::vector<QubitId>& v, QubitId q) {
    return std::binary_search(v.begin(), v.end(), q);
}

std::string signal_text(const Signal& s) {
    std::string out;
    for (QubitId q : s.terms()) {
        if (!out.empty()) out += '+';
        out += std::to_string(to_int(q));
    }
    return out;
}

}  // namespace

Signal::Signal(std::initializer_list<QubitId> terms) {
    for (QubitId q : terms) toggle(q);
}

Signal::Signal(const std::vector<QubitId>& terms) {
    for (QubitId q : terms) toggle(q);
}

void Signal::toggle(QubitId q) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), q);
    if (it != terms_.end() && *it == q) {
        terms_.erase(it);
    } else {
        terms_.insert(it, q);
    }
}

bool Signal::contains(QubitId q) const { return sorted_contains(terms_, q); }

std::vector<QubitId> action_qubits(const Action& a) {
    return std::visit(overloaded{
                          [](const Prepare& n) { return std::vector<QubitId>{n.qubit}; },
                          [](const Entangle& e) { return std::vector<QubitId>{e.u, e.v}; },
                          [](const Measure& m) { return std::vector<QubitId>{m.qubit}; },
                          [](const CorrectX& c) { return std::vector<QubitId>{c.qubit}; },
                          [](const CorrectZ& c) { return std::vector<QubitId>{c.qubit}; },
                      },
                      a);
}

std::vector<QubitId> action_dependencies(const Action& a) {
    return std::visit(overloaded{
                          [](const Prepare&) { return std::vector<QubitId>{}; },
                          [](const Entangle&) { return std::vector<QubitId>{}; },
                          [](const Measure& m) {
                              std::vector<QubitId> deps = m.s.terms();
                              deps.insert(deps.end(), m.t.terms().begin(), m.t.terms().end());
                              std::sort(deps.begin(), deps.end());
                              deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
                              return deps;
                          },
                          [](const CorrectX& c) { return c.signal.terms(); },
                          [](const CorrectZ& c) { return c.signal.terms(); },
                      },
                      a);
}

std::string describe(const Action& a) {
    return std::visit(
        overloaded{
            [](const Prepare& n) { return "N " + std::to_string(to_int(n.qubit)); },
            [](const Entangle& e) {
                return "E " + std::to_string(to_int(e.u)) + " " + std::to_string(to_int(e.v));
            },
            [](const Measure& m) {
                std::string out = "M " + std::to_string(to_int(m.qubit)) + " " + format_angle(m.angle);
                if (!m.s.empty()) out += " s[" + signal_text(m.s) + "]";
                if (!m.t.empty()) out += " t[" + signal_text(m.t) + "]";
                return out;
            },
            [](const CorrectX& c) {
                std::string out = "X " + std::to_string(to_int(c.qubit));
                if (!c.signal.empty()) out += " s[" + signal_text(c.signal) + "]";
                return out;
            },
            [](const CorrectZ& c) {
                std::string out = "Z " + std::to_string(to_int(c.qubit));
                if (!c.signal.empty()) out += " s[" + signal_text(c.signal) + "]";
                return out;
            },
        },
        a);
}

bool Pattern::has_qubit(QubitId q) const { return sorted_contains(qubits, q); }
bool Pattern::is_input(QubitId q) const { return sorted_contains(inputs, q); }
bool Pattern::is_output(QubitId q) const { return sorted_contains(outputs, q); }

std::vector<QubitId> measurement_order(const Pattern& p) {
    std::vector<QubitId> order;
    for (const Action& a : p.actions) {
        if (const auto* m = std::get_if<Measure>(&a)) order.push_back(m->qubit);
    }
    return order;
}

std::size_t entangle_count(const Pattern& p) {
    return static_cast<std::size_t>(std::count_if(p.actions.begin(), p.actions.end(), [](const Action& a) {
        return std::holds_alternative<Entangle>(a);
    }));
}

Pattern drop_signals(const Pattern& p) {
    Pattern out = p;
    for (Action& a : out.actions) {
        std::visit(overloaded{
                       [](Prepare&) {},
                       [](Entangle&) {},
                       [](Measure& m) {
                           m.s = {};
                           m.t = {};
                       },
                       [](CorrectX& c) { c.signal = {}; },
                       [](CorrectZ& c) { c.signal = {}; },
                   },
                   a);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::D0: return "D0";
        case Rule::D1: return "D1";
        case Rule::D2: return "D2";
        case Rule::D3: return "D3";
        case Rule::StandardForm: return "standard-form";
        case Rule::SelfLoop: return "self-loop";
        case Rule::DuplicateEdge: return "duplicate-edge";
        case Rule::Membership: return "membership";
    }
    return "?";
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        const Violation& v = violations[i];
        if (i) out << "; ";
        out << rule_name(v.rule);
        if (v.action_index) out << " at action " << *v.action_index;
        out << ": " << v.message;
    }
    return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("validation", "invalid pattern: " + report.summary()), report_(std::move(report)) {}

void require_valid(const Pattern& p) {
    ValidationReport report = validate(p);
    if (!report.ok()) throw ValidationError(std::move(report));
}

ValidationReport validate(const Pattern& p) {
    ValidationReport report;
    auto flag = [&](Rule rule, std::optional<std::size_t> index, std::string message) {
        report.violations.push_back({rule, index, std::move(message)});
    };
    auto name = [](QubitId q) { return "qubit " + std::to_string(to_int(q)); };

    for (QubitId q : p.inputs) {
        if (!p.has_qubit(q)) flag(Rule::Membership, std::nullopt, "input " + name(q) + " not in V");
    }
    for (QubitId q : p.outputs) {
        if (!p.has_qubit(q)) flag(Rule::Membership, std::nullopt, "output " + name(q) + " not in V");
    }

    std::unordered_set<QubitId> measured;
    std::unordered_set<QubitId> used;
    std::unordered_set<QubitId> prepared;
    std::set<Edge> edges;
    // 0: entanglement phase, 1: measurements, 2: corrections.
    int phase = 0;

    auto check_signal = [&](const Signal& s, std::size_t index, QubitId self) {
        for (QubitId d : s.terms()) {
            if (!p.has_qubit(d)) {
                flag(Rule::Membership, index, "signal references undeclared " + name(d));
            } else if (d == self || !measured.contains(d)) {
                flag(Rule::D0, index, "depends on outcome of " + name(d) + " which is not yet measured");
            }
        }
    };
    auto check_acts = [&](QubitId q, std::size_t index) {
        if (!p.has_qubit(q)) {
            flag(Rule::Membership, index, name(q) + " not in V");
            return false;
        }
        if (measured.contains(q)) {
            flag(Rule::D1, index, "acts on already measured " + name(q));
            return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        const Action& action = p.actions[i];
        if (const auto* n = std::get_if<Prepare>(&action)) {
            if (!check_acts(n->qubit, i)) continue;
            if (p.is_input(n->qubit)) {
                flag(Rule::D2, i, "input " + name(n->qubit) + " must not be prepared");
            } else if (prepared.contains(n->qubit)) {
                flag(Rule::D2, i, name(n->qubit) + " prepared twice");
            } else if (used.contains(n->qubit)) {
                flag(Rule::D2, i, name(n->qubit) + " prepared after first use");
            }
            prepared.insert(n->qubit);
            used.insert(n->qubit);
        } else if (const auto* e = std::get_if<Entangle>(&action)) {
            if (phase > 0) flag(Rule::StandardForm, i, "entanglement after measurement or correction");
            bool ok = check_acts(e->u, i);
            ok = check_acts(e->v, i) && ok;
            if (e->u == e->v) {
                flag(Rule::SelfLoop, i, "entangles " + name(e->u) + " with itself");
            } else if (ok && !edges.insert(Edge(e->u, e->v)).second) {
                flag(Rule::DuplicateEdge, i,
                     "pair (" + std::to_string(to_int(e->u)) + "," + std::to_string(to_int(e->v)) +
                         ") entangled twice");
            }
            used.insert(e->u);
            used.insert(e->v);
        } else if (const auto* m = std::get_if<Measure>(&action)) {
            if (phase > 1) flag(Rule::StandardForm, i, "measurement after correction");
            phase = std::max(phase, 1);
            check_signal(m->s, i, m->qubit);
            check_signal(m->t, i, m->qubit);
            if (!check_acts(m->qubit, i)) continue;
            if (p.is_output(m->qubit)) flag(Rule::D3, i, "output " + name(m->qubit) + " is measured");
            measured.insert(m->qubit);
            used.insert(m->qubit);
        } else {
            phase = 2;
            QubitId q = std::holds_alternative<CorrectX>(action) ? std::get<CorrectX>(action).qubit
                                                                 : std::get<CorrectZ>(action).qubit;
            const Signal& s = std::holds_alternative<CorrectX>(action) ? std::get<CorrectX>(action).signal
                                                                       : std::get<CorrectZ>(action).signal;
            check_signal(s, i, q);
            check_acts(q, i);
            used.insert(q);
        }
    }

    for (QubitId q : p.qubits) {
        if (!p.is_output(q) && !measured.contains(q)) {
            flag(Rule::D3, std::nullopt, "non-output " + name(q) + " is never measured");
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

std::vector<QubitId> EntanglementGraph::neighbors(QubitId q) const {
    std::vector<QubitId> out;
    for (const Edge& e : edges) {
        if (e.touches(q)) out.push_back(e.other(q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool EntanglementGraph::has_edge(QubitId u, QubitId v) const {
    return std::find(edges.begin(), edges.end(), Edge(u, v)) != edges.end();
}

EntanglementGraph entanglement_graph(const Pattern& p) {
    EntanglementGraph g;
    g.vertices = p.qubits;
    std::set<Edge> seen;
    for (const Action& a : p.actions) {
        const auto* e = std::get_if<Entangle>(&a);
        if (!e) continue;
        if (e->u == e->v) throw Error("graph", "self-loop on qubit " + std::to_string(to_int(e->u)));
        Edge edge(e->u, e->v);
        if (!seen.insert(edge).second) {
            throw Error("graph", "duplicate entanglement (" + std::to_string(to_int(edge.a)) + "," +
                                     std::to_string(to_int(edge.b)) + ")");
        }
        g.edges.push_back(edge);
    }
    return g;
}

std::size_t quantum_depth(const Pattern& p) {
    std::unordered_map<QubitId, std::size_t> depth_of;
    std::size_t depth = 0;
    for (const Action& a : p.actions) {
        const bool is_measure = std::holds_alternative<Measure>(a);
        const bool is_correction = std::holds_alternative<CorrectX>(a) || std::holds_alternative<CorrectZ>(a);
        if (!is_measure && !is_correction) continue;
        std::vector<QubitId> deps = action_dependencies(a);
        if (is_correction && deps.empty()) continue;
        std::size_t d = 1;
        for (QubitId q : deps) {
            auto it = depth_of.find(q);
            if (it != depth_of.end()) d = std::max(d, it->second + 1);
        }
        if (is_measure) depth_of[std::get<Measure>(a).qubit] = d;
        depth = std::max(depth, d);
    }
    return depth;
}

}  // namespace owqs
