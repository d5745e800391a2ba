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

#include "owqs/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace owqs {

void CostWeights::check() const {
    for (double w : {w_ms, w_os, w_ss, w_flag}) {
        if (!std::isfinite(w) || w < 0) throw Error("usage", "cost weights must be finite and non-negative");
    }
}

double cost(const CostTerms& t, const CostWeights& w) {
    const double ms = static_cast<double>(t.ms);
    const double os = static_cast<double>(t.os);
    const double ss = static_cast<double>(t.ss);
    if (t.flag) return w.w_ms * ms + w.w_os * os - w.w_ss * ss;
    return w.w_ms * ((ms + 1.0) * w.w_flag) + w.w_os * os - w.w_ss * ss;
}

std::vector<QubitId> ExecutionPlan::measurement_order() const {
    std::vector<QubitId> order;
    order.reserve(steps.size());
    for (const auto& s : steps) order.push_back(s.measure.qubit);
    return order;
}

std::vector<std::size_t> ExecutionPlan::predicted_ms() const {
    std::vector<std::size_t> ms;
    ms.reserve(steps.size());
    for (const auto& s : steps) ms.push_back(s.measurement_space.size());
    return ms;
}

std::size_t ExecutionPlan::total_ms() const {
    std::size_t total = 0;
    for (const auto& s : steps) total += s.measurement_space.size();
    return total;
}

namespace {

std::string qname(QubitId q) { return std::to_string(to_int(q)); }

/// Predicted sub-state groups plus the ready/dependent bookkeeping.
class Planner {
   public:
    Planner(const Pattern& p, const ScheduleOptions& options) : p_(p) {
        const std::size_t n = p.qubits.size();
        incident_.resize(n);
        measure_.resize(n);
        waiting_.assign(n, 0);
        readers_.resize(n);
        waiters_.resize(n);
        selected_.assign(n, false);
        output_.assign(n, false);
        for (QubitId q : p.outputs) output_[index(q)] = true;

        for (const Action& a : p.actions) {
            if (const auto* e = std::get_if<Entangle>(&a)) {
                const std::size_t id = edges_.size();
                edges_.push_back(*e);
                incident_[index(e->u)].push_back(id);
                incident_[index(e->v)].push_back(id);
            } else if (const auto* m = std::get_if<Measure>(&a)) {
                const std::size_t v = index(m->qubit);
                measure_[v] = *m;
                std::set<std::size_t> sources;
                for (QubitId d : m->s.terms()) sources.insert(index(d));
                for (QubitId d : m->t.terms()) sources.insert(index(d));
                waiting_[v] = sources.size();
                for (std::size_t src : sources) {
                    waiters_[src].push_back(v);
                    readers_[src].insert(v);
                }
            } else if (const auto* x = std::get_if<CorrectX>(&a)) {
                for (QubitId d : x->signal.terms()) readers_[index(d)].insert(index(x->qubit));
                plan_.corrections.push_back(a);
            } else if (const auto* z = std::get_if<CorrectZ>(&a)) {
                for (QubitId d : z->signal.terms()) readers_[index(d)].insert(index(z->qubit));
                plan_.corrections.push_back(a);
            }
        }
        applied_.assign(edges_.size(), false);

        group_of_.assign(n, kNone);
        for (const auto& g : options.input_groups) {
            if (g.empty()) continue;
            const std::size_t gid = groups_.size();
            groups_.push_back(Group{{}, false});
            for (QubitId q : g) {
                if (!p.is_input(q)) throw Error("schedule", "input group names non-input qubit " + qname(q));
                const std::size_t qi = index(q);
                if (group_of_[qi] != kNone) throw Error("schedule", "qubit " + qname(q) + " is in two input groups");
                group_of_[qi] = gid;
                groups_[gid].members.push_back(qi);
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (group_of_[q] != kNone) continue;
            group_of_[q] = groups_.size();
            groups_.push_back(Group{{q}, false});
        }
        for (const auto& g : groups_) peak_ = std::max(peak_, g.members.size());

        for (std::size_t v = 0; v < n; ++v) {
            if (!measure_[v]) continue;
            ++remaining_;
            if (waiting_[v] == 0) ready_.insert(v);
        }
    }

    bool done() const { return remaining_ == 0; }
    const std::set<std::size_t>& ready() const { return ready_; }

    std::size_t index(QubitId q) const {
        auto it = std::lower_bound(p_.qubits.begin(), p_.qubits.end(), q);
        if (it == p_.qubits.end() || *it != q) throw Error("schedule", "unknown qubit " + qname(q));
        return static_cast<std::size_t>(it - p_.qubits.begin());
    }

    CostTerms terms(std::size_t v) const {
        CostTerms t;
        std::set<std::size_t> touched{group_of_[v]};
        for (std::size_t e : incident_[v]) {
            if (applied_[e]) continue;
            const std::size_t w = other(e, v);
            touched.insert(group_of_[w]);
            if (output_[w]) ++t.os;
        }
        for (std::size_t g : touched) t.ms += groups_[g].members.size();
        t.ss = readers_[v].size();
        const Group& own = groups_[group_of_[v]];
        t.flag = own.merged && own.members.size() > 1;
        return t;
    }

    void select(std::size_t v) {
        if (!ready_.contains(v)) {
            throw Error("schedule", "qubit " + qname(p_.qubits[v]) + " is not ready for measurement");
        }
        PlanStep step;
        step.terms = terms(v);
        step.measure = *measure_[v];
        for (std::size_t e : incident_[v]) {
            if (applied_[e]) continue;
            applied_[e] = true;
            step.entangles.push_back(edges_[e]);
            join(v, other(e, v));
        }
        Group& own = groups_[group_of_[v]];
        for (std::size_t q : own.members) step.measurement_space.push_back(p_.qubits[q]);
        std::sort(step.measurement_space.begin(), step.measurement_space.end());
        peak_ = std::max(peak_, own.members.size());
        std::erase(own.members, v);
        group_of_[v] = kNone;

        selected_[v] = true;
        ready_.erase(v);
        --remaining_;
        for (std::size_t w : waiters_[v]) {
            if (--waiting_[w] == 0) ready_.insert(w);
        }
        plan_.steps.push_back(std::move(step));
    }

    ExecutionPlan finish() && {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (applied_[e]) continue;
            applied_[e] = true;
            plan_.output_entangles.push_back(edges_[e]);
            const std::size_t u = index(edges_[e].u);
            const std::size_t v = index(edges_[e].v);
            if (selected_[u] || selected_[v]) {
                throw Error("schedule", "edge " + describe(edges_[e]) + " touches a measured qubit");
            }
            join(u, v);
            peak_ = std::max(peak_, groups_[group_of_[u]].members.size());
        }
        plan_.predicted_peak = p_.qubits.empty() ? 0 : peak_;
        return std::move(plan_);
    }

   private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Group {
        std::vector<std::size_t> members;
        bool merged = false;
    };

    std::size_t other(std::size_t e, std::size_t v) const {
        const std::size_t u = index(edges_[e].u);
        return u == v ? index(edges_[e].v) : u;
    }

    void join(std::size_t a, std::size_t b) {
        std::size_t ga = group_of_[a];
        std::size_t gb = group_of_[b];
        if (ga == gb) return;
        if (groups_[ga].members.size() < groups_[gb].members.size()) std::swap(ga, gb);
        for (std::size_t q : groups_[gb].members) {
            group_of_[q] = ga;
            groups_[ga].members.push_back(q);
        }
        groups_[gb].members.clear();
        groups_[ga].merged = true;
    }

    static std::string describe(const Entangle& e) { return "(" + qname(e.u) + "," + qname(e.v) + ")"; }

    const Pattern& p_;
    std::vector<Entangle> edges_;
    std::vector<bool> applied_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::optional<Measure>> measure_;
    std::vector<std::size_t> waiting_;
    std::vector<std::vector<std::size_t>> waiters_;
    std::vector<std::set<std::size_t>> readers_;
    std::vector<bool> selected_;
    std::vector<bool> output_;
    std::vector<std::size_t> group_of_;
    std::vector<Group> groups_;
    std::set<std::size_t> ready_;
    std::size_t remaining_ = 0;
    std::size_t peak_ = 0;
    ExecutionPlan plan_;
};

}  // namespace

ExecutionPlan reorder(const Pattern& p, const CostWeights& weights, const ScheduleOptions& options) {
    weights.check();
    Planner planner(p, options);
    while (!planner.done()) {
        if (planner.ready().empty()) {
            throw Error("schedule", "deadlock: measurements remain but none has its dependencies resolved");
        }
        std::size_t best = *planner.ready().begin();
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t v : planner.ready()) {
            const double c = cost(planner.terms(v), weights);
            if (c < best_cost) {
                best_cost = c;
                best = v;
            }
        }
        planner.select(best);
    }
    ExecutionPlan plan = std::move(planner).finish();
    plan.weights = weights;
    return plan;
}

ExecutionPlan plan_from_order(const Pattern& p, const std::vector<QubitId>& order, const ScheduleOptions& options) {
    Planner planner(p, options);
    for (QubitId q : order) planner.select(planner.index(q));
    if (!planner.done()) throw Error("schedule", "measurement order leaves qubits unmeasured");
    return std::move(planner).finish();
}

TunedPlan tune_weights(const Pattern& p, const ScheduleOptions& options) {
    const double n_out = static_cast<double>(std::max<std::size_t>(p.outputs.size(), 1));
    const auto iterations = static_cast<std::size_t>(n_out);
    std::optional<TunedPlan> best;
    for (std::size_t k = 0; k < iterations; ++k) {
        const CostWeights w{n_out - static_cast<double>(k), n_out, 0.5, n_out};
        ExecutionPlan plan = reorder(p, w, options);
        const bool better = !best || plan.predicted_peak < best->plan.predicted_peak ||
                            (plan.predicted_peak == best->plan.predicted_peak &&
                             plan.total_ms() < best->plan.total_ms());
        if (better) best = TunedPlan{w, std::move(plan), k};
    }
    return std::move(*best);
}

std::uint64_t plan_complexity_guard(const Pattern& p) {
    const std::uint64_t e = entangle_count(p);
    const std::uint64_t k = p.qubits.size() - p.outputs.size();
    return e * k * k;
}

std::vector<std::string> verify_plan(const Pattern& p, const ExecutionPlan& plan) {
    std::vector<std::string> problems;

    std::map<Edge, int> edge_balance;
    for (const Action& a : p.actions) {
        if (const auto* e = std::get_if<Entangle>(&a)) ++edge_balance[Edge(e->u, e->v)];
    }
    std::set<QubitId> measured;
    auto use_edge = [&](const Entangle& e) {
        if (--edge_balance[Edge(e.u, e.v)] < 0) {
            problems.push_back("edge (" + qname(e.u) + "," + qname(e.v) + ") is emitted more often than in the pattern");
        }
        if (measured.contains(e.u) || measured.contains(e.v)) {
            problems.push_back("edge (" + qname(e.u) + "," + qname(e.v) + ") follows a measurement of its endpoint");
        }
    };
    auto check_signal = [&](const Signal& s, const std::string& where) {
        for (QubitId d : s.terms()) {
            if (!measured.contains(d)) problems.push_back(where + " reads qubit " + qname(d) + " before it is measured");
        }
    };

    for (const PlanStep& step : plan.steps) {
        for (const Entangle& e : step.entangles) {
            use_edge(e);
            if (e.u != step.measure.qubit && e.v != step.measure.qubit) {
                problems.push_back("edge (" + qname(e.u) + "," + qname(e.v) + ") is batched with an unrelated measurement");
            }
        }
        const QubitId v = step.measure.qubit;
        check_signal(step.measure.s, "M " + qname(v));
        check_signal(step.measure.t, "M " + qname(v));
        if (!measured.insert(v).second) problems.push_back("qubit " + qname(v) + " is measured twice");
    }
    for (const Entangle& e : plan.output_entangles) use_edge(e);
    for (const auto& [edge, left] : edge_balance) {
        if (left > 0) problems.push_back("edge (" + qname(edge.a) + "," + qname(edge.b) + ") is missing from the plan");
    }

    std::vector<Measure> source_measures;
    std::vector<Action> source_corrections;
    for (const Action& a : p.actions) {
        if (const auto* m = std::get_if<Measure>(&a)) source_measures.push_back(*m);
        if (std::holds_alternative<CorrectX>(a) || std::holds_alternative<CorrectZ>(a)) source_corrections.push_back(a);
    }
    if (measured.size() != source_measures.size()) problems.push_back("plan does not measure every measured qubit");
    for (const Measure& m : source_measures) {
        auto it = std::find_if(plan.steps.begin(), plan.steps.end(),
                               [&](const PlanStep& s) { return s.measure.qubit == m.qubit; });
        if (it == plan.steps.end()) {
            problems.push_back("qubit " + qname(m.qubit) + " is never measured");
        } else if (!(it->measure == m)) {
            problems.push_back("measurement of qubit " + qname(m.qubit) + " differs from the pattern");
        }
    }
    if (plan.corrections != source_corrections) problems.push_back("corrections differ from the pattern");
    for (const Action& a : plan.corrections) {
        for (QubitId d : action_dependencies(a)) {
            if (!measured.contains(d)) problems.push_back(describe(a) + " reads an unmeasured qubit");
        }
    }
    return problems;
}

}  // namespace owqs
