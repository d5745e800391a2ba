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

#include "owqs/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "owqs/gflow.hpp"

namespace owqs {

namespace {

std::string qname(QubitId q) { return std::to_string(to_int(q)); }

}  // namespace

void SignalTable::record(QubitId q, int bit) {
    if (!outcomes.emplace(q, bit ? 1 : 0).second) throw Error("engine", "qubit " + qname(q) + " measured twice");
}

int eval_signal(const Signal& s, const SignalTable& table) {
    int value = 0;
    for (QubitId q : s.terms()) {
        auto it = table.outcomes.find(q);
        if (it == table.outcomes.end()) {
            throw Error("engine", "signal reads qubit " + qname(q) + " before its measurement");
        }
        value ^= it->second;
    }
    return value;
}

double resolve_angle(double base, int s, int t) {
    return (s ? -base : base) + (t ? std::numbers::pi : 0.0);
}

InputStateSpec InputStateSpec::plus(const Pattern& p) {
    InputStateSpec spec;
    for (QubitId q : p.inputs) {
        Amplitudes<double> amps(2);
        amps.setConstant(std::complex<double>(1.0 / std::sqrt(2.0), 0.0));
        spec.groups.push_back(InputGroup{{q}, std::move(amps)});
    }
    return spec;
}

InputStateSpec InputStateSpec::basis(const Pattern& p, std::uint64_t bits) {
    InputStateSpec spec;
    for (std::size_t k = 0; k < p.inputs.size(); ++k) {
        Amplitudes<double> amps = Amplitudes<double>::Zero(2);
        amps((bits >> k) & 1u) = 1.0;
        spec.groups.push_back(InputGroup{{p.inputs[k]}, std::move(amps)});
    }
    return spec;
}

void InputStateSpec::check(const Pattern& p) const {
    std::set<QubitId> seen;
    for (const InputGroup& g : groups) {
        if (g.qubits.empty()) throw Error("input", "input group without qubits");
        if (g.qubits.size() > 30 || g.amps.size() != (Eigen::Index{1} << g.qubits.size())) {
            throw Error("input", "input group needs 2^m amplitudes");
        }
        for (QubitId q : g.qubits) {
            if (!p.is_input(q)) throw Error("input", "qubit " + qname(q) + " is not an input of the pattern");
            if (!seen.insert(q).second) throw Error("input", "qubit " + qname(q) + " appears in two input groups");
        }
        if (std::abs(g.amps.squaredNorm() - 1.0) > 1e-9) throw Error("input", "input group is not normalized");
    }
    if (seen.size() != p.inputs.size()) throw Error("input", "input state does not cover every input qubit");
}

ScheduleOptions InputStateSpec::schedule_options() const {
    ScheduleOptions options;
    for (const InputGroup& g : groups) options.input_groups.push_back(g.qubits);
    return options;
}

SubState RunResult::output_state() const {
    SubState out;
    for (const SubState& f : output_factors) out = tensor(out, f);
    return sorted_by_id(out);
}

namespace {

class Runner {
   public:
    Runner(const Pattern& p, const ExecutionPlan& plan, const RunConfig& cfg)
        : p_(p), plan_(plan), cfg_(cfg), rng_(seed_of(cfg.policy)) {}

    RunResult run(const InputStateSpec& input) {
        input.check(p_);
        if (const auto* forced = std::get_if<ForcedOutcomes>(&cfg_.policy)) {
            if (forced->bits.size() != plan_.steps.size()) {
                throw Error("engine", "forced outcome sequence has " + std::to_string(forced->bits.size()) +
                                          " bits but the plan measures " + std::to_string(plan_.steps.size()) +
                                          " qubits");
            }
        }
        count_pending_edges();

        const auto start = std::chrono::steady_clock::now();
        for (const InputGroup& g : input.groups) space_.load(SubState(g.qubits, g.amps));
        emit(TraceKind::Load, {});

        for (std::size_t k = 0; k < plan_.steps.size(); ++k) {
            const PlanStep& step = plan_.steps[k];
            for (const Entangle& e : step.entangles) entangle(e);
            measure(step.measure, k);
        }
        for (const Entangle& e : plan_.output_entangles) entangle(e);
        for (const Action& a : plan_.corrections) correct(a);
        for (QubitId o : p_.outputs) ensure_live(o);

        RunResult result;
        for (auto id : space_.substate_ids()) result.output_factors.push_back(sorted_by_id(space_.substate(id)));
        const auto end = std::chrono::steady_clock::now();
        emit(TraceKind::Finish, {});

        std::sort(result.output_factors.begin(), result.output_factors.end(),
                  [](const SubState& a, const SubState& b) { return a.order.front() < b.order.front(); });
        std::vector<QubitId> covered;
        for (const SubState& f : result.output_factors) covered.insert(covered.end(), f.order.begin(), f.order.end());
        std::sort(covered.begin(), covered.end());
        if (covered != p_.outputs) throw Error("engine", "plan leaves live qubits other than the outputs");

        result.outcomes = std::move(table_);
        result.measurement_order = plan_.measurement_order();
        result.plan = plan_;
        result.stats.m_peak = space_.stats().m_peak;
        result.stats.predicted_peak = plan_.predicted_peak;
        result.stats.probs = std::move(probs_);
        result.stats.ops = space_.stats().ops;
        result.stats.norm_warnings = space_.stats().norm_warnings;
        result.stats.discarded_phases = space_.stats().discarded_phases;
        result.stats.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
        return result;
    }

   private:
    static std::uint64_t seed_of(const OutcomePolicy& policy) {
        if (const auto* r = std::get_if<RandomOutcomes>(&policy)) return r->seed;
        return 0;
    }

    void emit(TraceKind kind, std::vector<QubitId> qubits, int outcome = 0, double prob0 = -1.0,
              double angle = 0.0) {
        if (!cfg_.trace) return;
        cfg_.trace(TraceEvent{kind, std::move(qubits), outcome, prob0, angle, space_});
    }

    void count_pending_edges() {
        for (const PlanStep& step : plan_.steps) {
            for (const Entangle& e : step.entangles) {
                ++pending_[e.u];
                ++pending_[e.v];
            }
        }
        for (const Entangle& e : plan_.output_entangles) {
            ++pending_[e.u];
            ++pending_[e.v];
        }
    }

    void ensure_live(QubitId q) {
        if (space_.is_live(q)) return;
        if (!p_.has_qubit(q)) throw Error("engine", "plan names unknown qubit " + qname(q));
        if (p_.is_input(q) || table_.has(q)) throw Error("engine", "qubit " + qname(q) + " is no longer live");
        space_.prepare_plus(q);
        emit(TraceKind::Prepare, {q});
    }

    void entangle(const Entangle& e) {
        ensure_live(e.u);
        ensure_live(e.v);
        space_.entangle(e.u, e.v);
        --pending_[e.u];
        --pending_[e.v];
        emit(TraceKind::Entangle, {e.u, e.v});
    }

    OutcomeChoice choice(std::size_t k) {
        if (cfg_.mode == Mode::Eowqs) return PositiveBranch{};
        return std::visit(
            [&](const auto& policy) -> OutcomeChoice {
                using T = std::decay_t<decltype(policy)>;
                if constexpr (std::is_same_v<T, RandomOutcomes>) {
                    // 53 random bits mapped onto (0, 1].
                    const double u = static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
                    return RandomDraw{u};
                } else if constexpr (std::is_same_v<T, ForcedOutcomes>) {
                    return ForcedOutcome{policy.bits[k]};
                } else {
                    return PositiveBranch{};
                }
            },
            cfg_.policy);
    }

    void measure(const Measure& m, std::size_t k) {
        const QubitId v = m.qubit;
        ensure_live(v);
        if (pending_[v] != 0) throw Error("engine", "qubit " + qname(v) + " still has pending entanglements");
        const double angle = resolve_angle(m.angle, eval_signal(m.s, table_), eval_signal(m.t, table_));
        const auto sub = space_.substate_of(v);
        const MeasureResult r = space_.measure_eliminate(v, angle, choice(k));
        table_.record(v, r.outcome);
        probs_.push_back(r.prob0);
        if (cfg_.mode == Mode::Owqs && space_.has_substate(sub)) space_.check_norm(sub);
        emit(TraceKind::Measure, {v}, r.outcome, r.prob0, angle);
    }

    void correct(const Action& a) {
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, CorrectX> || std::is_same_v<T, CorrectZ>) {
                    ensure_live(c.qubit);
                    const int apply = eval_signal(c.signal, table_);
                    if (apply) {
                        if constexpr (std::is_same_v<T, CorrectX>) {
                            space_.correct_x(c.qubit);
                        } else {
                            space_.correct_z(c.qubit);
                        }
                    }
                    emit(TraceKind::Correct, {c.qubit}, apply);
                } else {
                    throw Error("engine", "plan carries a non-correction action in its correction list");
                }
            },
            a);
    }

    const Pattern& p_;
    const ExecutionPlan& plan_;
    const RunConfig& cfg_;
    std::mt19937_64 rng_;
    StateSpace space_;
    SignalTable table_;
    std::vector<double> probs_;
    std::map<QubitId, int> pending_;
};

}  // namespace

RunResult run(const Pattern& p, const ExecutionPlan& plan, const InputStateSpec& input, const RunConfig& cfg) {
    return Runner(p, plan, cfg).run(input);
}

RunResult run_owqs(const Pattern& p, const InputStateSpec& input, const RunConfig& cfg) {
    const TunedPlan tuned = tune_weights(p, input.schedule_options());
    return run(p, tuned.plan, input, cfg);
}

ExecutionPlan eowqs_plan(const Pattern& p, const ScheduleOptions& options) {
    const Pattern dropped = drop_signals(p);
    ExecutionPlan plan = tune_weights(dropped, options).plan;
    const TunedPlan owqs = tune_weights(p, options);
    ExecutionPlan replay = plan_from_order(dropped, owqs.plan.measurement_order(), options);
    if (replay.predicted_peak < plan.predicted_peak) {
        replay.weights = owqs.weights;
        return replay;
    }
    return plan;
}

std::variant<RunResult, IncorrectPattern> run_eowqs(const Pattern& p, const InputStateSpec& input,
                                                    std::function<void(const TraceEvent&)> trace) {
    const OpenGraph og = OpenGraph::from_pattern(p);
    const std::optional<GFlow> flow = find_gflow(og);
    if (!flow) return IncorrectPattern{"incorrect pattern: the open graph has no gflow"};

    const Pattern dropped = drop_signals(p);
    const ExecutionPlan plan = eowqs_plan(p, input.schedule_options());
    RunConfig cfg;
    cfg.mode = Mode::Eowqs;
    cfg.policy = PositiveOutcomes{};
    cfg.trace = std::move(trace);
    RunResult result = run(dropped, plan, input, cfg);
    if (!signals_match_gflow(p, *flow)) {
        result.stats.warnings.push_back("pattern signals differ from those induced by the gflow found");
    }
    return result;
}

}  // namespace owqs
