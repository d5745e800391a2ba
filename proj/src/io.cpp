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

#include "owqs/io.hpp"

#include <fstream>
#include <sstream>

namespace owqs {

namespace {

std::vector<QubitId> qubits_from_json(const Json& j) {
    std::vector<QubitId> out;
    for (const Json& q : j) {
        const auto v = q.get<std::int64_t>();
        if (v <= 0 || v > std::numeric_limits<std::uint32_t>::max()) throw Error("input", "qubit ids must be positive");
        out.push_back(QubitId{static_cast<std::uint32_t>(v)});
    }
    return out;
}

Json qubits_to_json(const std::vector<QubitId>& qs) {
    Json out = Json::array();
    for (QubitId q : qs) out.push_back(to_int(q));
    return out;
}

Json edge_to_json(const Entangle& e) { return Json::array({to_int(e.u), to_int(e.v)}); }

}  // namespace

Json complex_to_json(std::complex<double> c) { return Json::array({c.real(), c.imag()}); }

std::complex<double> complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw Error("input", "complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json substate_to_json(const SubState& s) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < s.amps.size(); ++i) amps.push_back(complex_to_json(s.amps(i)));
    return Json{{"qubits", qubits_to_json(s.order)}, {"amps", std::move(amps)}};
}

SubState substate_from_json(const Json& j) {
    try {
        std::vector<QubitId> qubits = qubits_from_json(j.at("qubits"));
        const Json& list = j.at("amps");
        if (qubits.size() > 30 || list.size() != (std::size_t{1} << qubits.size())) {
            throw Error("input", "a group over m qubits needs 2^m amplitudes");
        }
        Amplitudes<double> amps(static_cast<Eigen::Index>(list.size()));
        for (std::size_t i = 0; i < list.size(); ++i) amps(static_cast<Eigen::Index>(i)) = complex_from_json(list[i]);
        return SubState(std::move(qubits), std::move(amps));
    } catch (const Json::exception& e) {
        throw Error("input", std::string("malformed state group: ") + e.what());
    }
}

InputStateSpec state_from_json(const Json& j) {
    InputStateSpec spec;
    try {
        for (const Json& g : j.at("groups")) {
            SubState s = substate_from_json(g);
            spec.groups.push_back(InputGroup{std::move(s.order), std::move(s.amps)});
        }
    } catch (const Json::exception& e) {
        throw Error("input", std::string("malformed state document: ") + e.what());
    }
    return spec;
}

InputStateSpec load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open state file " + path);
    try {
        return state_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
        throw Error("input", path + ": " + e.what());
    }
}

Json state_to_json(const InputStateSpec& spec) {
    Json groups = Json::array();
    for (const InputGroup& g : spec.groups) groups.push_back(substate_to_json(SubState(g.qubits, g.amps)));
    return Json{{"groups", std::move(groups)}};
}

Json result_to_json(const RunResult& r) {
    Json outcomes = Json::array();
    for (QubitId q : r.measurement_order) outcomes.push_back(Json::array({to_int(q), r.outcomes.outcomes.at(q)}));
    Json factors = Json::array();
    for (const SubState& f : r.output_factors) factors.push_back(substate_to_json(f));
    Json phases = Json::array();
    for (auto c : r.stats.discarded_phases) phases.push_back(complex_to_json(c));
    const KernelCounters& ops = r.stats.ops;
    Json stats{
        {"m_peak", r.stats.m_peak},
        {"predicted_peak", r.stats.predicted_peak},
        {"plan", plan_to_json(r.plan)},
        {"wall_ms", r.stats.wall_ms},
        {"norm_warnings", r.stats.norm_warnings},
        {"discarded_phases", std::move(phases)},
        {"warnings", r.stats.warnings},
        {"ops",
         {{"cz_flips", ops.cz_flips},
          {"x_swaps", ops.x_swaps},
          {"z_flips", ops.z_flips},
          {"probability_pairs", ops.probability_pairs},
          {"compaction_writes", ops.compaction_writes},
          {"merges", ops.merges}}},
    };
    return Json{{"outcomes", std::move(outcomes)},
                {"output_state", std::move(factors)},
                {"probs", r.stats.probs},
                {"stats", std::move(stats)}};
}

RunResult result_from_json(const Json& j) {
    RunResult r;
    try {
        for (const Json& o : j.at("outcomes")) {
            const QubitId q{o.at(0).get<std::uint32_t>()};
            r.measurement_order.push_back(q);
            r.outcomes.record(q, o.at(1).get<int>());
        }
        for (const Json& f : j.at("output_state")) r.output_factors.push_back(substate_from_json(f));
        r.stats.probs = j.at("probs").get<std::vector<double>>();
        const Json& s = j.at("stats");
        r.stats.m_peak = s.at("m_peak").get<std::size_t>();
        r.stats.predicted_peak = s.at("predicted_peak").get<std::size_t>();
        r.stats.wall_ms = s.at("wall_ms").get<double>();
        r.stats.norm_warnings = s.at("norm_warnings").get<std::size_t>();
        r.stats.warnings = s.at("warnings").get<std::vector<std::string>>();
        for (const Json& c : s.at("discarded_phases")) r.stats.discarded_phases.push_back(complex_from_json(c));
        const Json& ops = s.at("ops");
        r.stats.ops.cz_flips = ops.at("cz_flips").get<std::uint64_t>();
        r.stats.ops.x_swaps = ops.at("x_swaps").get<std::uint64_t>();
        r.stats.ops.z_flips = ops.at("z_flips").get<std::uint64_t>();
        r.stats.ops.probability_pairs = ops.at("probability_pairs").get<std::uint64_t>();
        r.stats.ops.compaction_writes = ops.at("compaction_writes").get<std::uint64_t>();
        r.stats.ops.merges = ops.at("merges").get<std::uint64_t>();
        r.plan.predicted_peak = s.at("plan").at("predicted_peak").get<std::size_t>();
    } catch (const Json::exception& e) {
        throw Error("input", std::string("malformed run result: ") + e.what());
    }
    return r;
}

std::string plan_to_text(const ExecutionPlan& plan) {
    std::ostringstream out;
    auto edge_text = [](const Entangle& e) {
        return "E(" + std::to_string(to_int(e.u)) + "," + std::to_string(to_int(e.v)) + ")";
    };
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const PlanStep& step = plan.steps[k];
        out << "step " << (k + 1) << ":";
        for (const Entangle& e : step.entangles) out << " " << edge_text(e);
        if (!step.entangles.empty()) out << " ;";
        out << " M " << to_int(step.measure.qubit) << " ; MS={";
        for (std::size_t i = 0; i < step.measurement_space.size(); ++i) {
            out << (i ? "," : "") << to_int(step.measurement_space[i]);
        }
        out << "}\n";
    }
    if (!plan.output_entangles.empty()) {
        out << "outputs:";
        for (const Entangle& e : plan.output_entangles) out << " " << edge_text(e);
        out << "\n";
    }
    if (!plan.corrections.empty()) {
        out << "corrections:";
        for (std::size_t i = 0; i < plan.corrections.size(); ++i) out << (i ? " ;" : "") << " " << describe(plan.corrections[i]);
        out << "\n";
    }
    out << "peak m = " << plan.predicted_peak << "\n";
    return out.str();
}

Json plan_to_json(const ExecutionPlan& plan) {
    Json steps = Json::array();
    for (const PlanStep& step : plan.steps) {
        Json edges = Json::array();
        for (const Entangle& e : step.entangles) edges.push_back(edge_to_json(e));
        steps.push_back(Json{{"entangles", std::move(edges)},
                             {"measure", to_int(step.measure.qubit)},
                             {"action", describe(step.measure)},
                             {"ms", qubits_to_json(step.measurement_space)}});
    }
    Json tail = Json::array();
    for (const Entangle& e : plan.output_entangles) tail.push_back(edge_to_json(e));
    Json corrections = Json::array();
    for (const Action& a : plan.corrections) corrections.push_back(describe(a));
    return Json{{"steps", std::move(steps)},
                {"output_entangles", std::move(tail)},
                {"corrections", std::move(corrections)},
                {"predicted_peak", plan.predicted_peak},
                {"weights",
                 {{"w_ms", plan.weights.w_ms},
                  {"w_os", plan.weights.w_os},
                  {"w_ss", plan.weights.w_ss},
                  {"w_flag", plan.weights.w_flag}}}};
}

Json gflow_to_json(const GFlow& flow) {
    Json sets = Json::object();
    for (const auto& [v, g] : flow.correction_sets) sets[std::to_string(to_int(v))] = qubits_to_json(g);
    Json layers = Json::object();
    for (const auto& [v, layer] : flow.layering) layers[std::to_string(to_int(v))] = layer;
    return Json{{"correction_sets", std::move(sets)}, {"layering", std::move(layers)}, {"layer_count", flow.layer_count()}};
}

}  // namespace owqs
