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

#include "owqs/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>

#include "owqs/engine.hpp"
#include "owqs/generators.hpp"
#include "owqs/gflow.hpp"
#include "owqs/io.hpp"
#include "owqs/oracle.hpp"
#include "owqs/scheduler.hpp"

namespace owqs::cli {

namespace {

struct SimulateArgs {
    std::string pattern;
    std::string input = "plus";
    std::string mode = "owqs";
    std::uint64_t seed = 0;
    std::optional<std::string> force;
    bool oracle = false;
    std::optional<std::string> out;
    bool stats = false;
};

struct ReorderArgs {
    std::string pattern;
    std::string weights = "auto";
    bool json = false;
};

struct GflowArgs {
    std::string pattern;
    bool json = false;
};

struct BenchArgs {
    std::string family;
    std::size_t rows = 2;
    std::size_t cols = 8;
    std::size_t n = 8;
    double density = 0.3;
    std::string angles = "uniform";
    std::uint64_t seed = 0;
    std::size_t reps = 1;
    std::string path;
    bool allow_nogflow = false;
    double min_time_ms = 0.0;
};

Pattern load_valid_pattern(const std::string& path) {
    Pattern p = load_pattern(path);
    require_valid(p);
    return p;
}

InputStateSpec input_for(const Pattern& p, const std::string& spec) {
    if (spec == "plus") return InputStateSpec::plus(p);
    InputStateSpec state = load_state(spec);
    state.check(p);
    return state;
}

std::vector<int> parse_bits(const std::string& text) {
    std::vector<int> bits;
    for (char c : text) {
        if (c == '0' || c == '1') {
            bits.push_back(c - '0');
        } else if (c != ',' && c != ' ') {
            throw Error("usage", "--force-outcomes takes a string of 0 and 1");
        }
    }
    return bits;
}

CostWeights parse_weights(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, end - start);
        double v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw Error("usage", "weights must be four comma-separated numbers or 'auto'");
        }
        values.push_back(v);
        start = end + 1;
    }
    if (values.size() != 4) throw Error("usage", "weights must be four comma-separated numbers or 'auto'");
    CostWeights w{values[0], values[1], values[2], values[3]};
    w.check();
    return w;
}

void write_json(const Json& doc, const std::optional<std::string>& path, std::ostream& out) {
    if (!path) {
        out << doc.dump(2) << "\n";
        return;
    }
    std::ofstream file(*path);
    if (!file) throw Error("io", "cannot write " + *path);
    file << doc.dump(2) << "\n";
}

Json oracle_check(const Pattern& p, const InputStateSpec& input, const RunResult& r) {
    const oracle::DenseRun dense = oracle::dense_run(p, input, r.outcomes.outcomes);
    const SubState reference(dense.output.qubits, dense.output.amps);
    const SubState engine = r.output_state();
    const bool agree = states_equal_up_to_phase(reference, engine, 1e-10);
    return Json{{"output_state", substate_to_json(reference)}, {"agree", agree}};
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const Pattern p = load_valid_pattern(a.pattern);
    const InputStateSpec input = input_for(p, a.input);

    Json doc;
    RunResult result;
    Pattern simulated = p;
    if (a.mode == "eowqs") {
        if (a.force) throw Error("usage", "--force-outcomes cannot be combined with --mode eowqs");
        auto outcome = run_eowqs(p, input);
        if (const auto* bad = std::get_if<IncorrectPattern>(&outcome)) throw Error("incorrect", bad->message);
        result = std::move(std::get<RunResult>(outcome));
        simulated = drop_signals(p);
    } else {
        RunConfig cfg;
        if (a.force) {
            cfg.policy = ForcedOutcomes{parse_bits(*a.force)};
        } else {
            cfg.policy = RandomOutcomes{a.seed};
        }
        result = run_owqs(p, input, cfg);
    }
    doc = result_to_json(result);
    doc["mode"] = a.mode;
    if (a.mode == "owqs" && !a.force) doc["seed"] = a.seed;
    if (a.oracle) doc["oracle"] = oracle_check(simulated, input, result);
    write_json(doc, a.out, out);

    if (a.stats) {
        err << "m_peak " << result.stats.m_peak << " (predicted " << result.stats.predicted_peak << ")\n"
            << "measurements " << result.measurement_order.size() << "\n"
            << "wall_ms " << result.stats.wall_ms << "\n"
            << "norm_warnings " << result.stats.norm_warnings << "\n"
            << "plan_complexity_guard " << plan_complexity_guard(p) << "\n";
        for (const std::string& w : result.stats.warnings) err << "warning: " << w << "\n";
    }
    return kOk;
}

int cmd_reorder(const ReorderArgs& a, std::ostream& out) {
    const Pattern p = load_valid_pattern(a.pattern);
    ExecutionPlan plan;
    if (a.weights == "auto") {
        plan = tune_weights(p).plan;
    } else {
        plan = reorder(p, parse_weights(a.weights));
    }
    if (a.json) {
        Json doc = plan_to_json(plan);
        doc["complexity_guard"] = plan_complexity_guard(p);
        out << doc.dump(2) << "\n";
    } else {
        out << plan_to_text(plan);
        out << "complexity guard E*K^2 = " << plan_complexity_guard(p) << "\n";
    }
    return kOk;
}

int cmd_gflow(const GflowArgs& a, std::ostream& out) {
    const Pattern p = load_valid_pattern(a.pattern);
    const OpenGraph og = OpenGraph::from_pattern(p);
    const std::optional<GFlow> flow = find_gflow(og);
    if (a.json) {
        Json doc{{"found", flow.has_value()}};
        if (flow) {
            doc["gflow"] = gflow_to_json(*flow);
            doc["signals_match"] = signals_match_gflow(p, *flow);
        }
        out << doc.dump(2) << "\n";
    } else if (flow) {
        out << "gflow: found\nlayers: " << flow->layer_count() << "\n";
        if (!signals_match_gflow(p, *flow)) out << "note: pattern signals differ from the induced ones\n";
    } else {
        out << "gflow: not found\n";
    }
    return flow ? kOk : kIncorrectPattern;
}

std::string format_ms(double ms) {
    std::ostringstream s;
    s << std::setprecision(6) << ms;
    return s.str();
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    Pattern p;
    if (a.family == "linear") {
        p = generate_linear(a.cols);
    } else if (a.family == "cluster2d") {
        p = generate_cluster(a.rows, a.cols);
    } else if (a.family == "random") {
        p = generate_random(RandomPatternSpec{a.n, a.density, parse_angle_set(a.angles), a.seed, a.allow_nogflow});
    } else if (a.family == "file") {
        if (a.path.empty()) throw Error("usage", "--family file needs --path");
        p = load_pattern(a.path);
    } else {
        throw Error("usage", "unknown family '" + a.family + "'");
    }
    require_valid(p);
    const InputStateSpec input = InputStateSpec::plus(p);
    const ExecutionPlan owqs_plan = tune_weights(p).plan;
    const bool has_gflow = find_gflow(OpenGraph::from_pattern(p)).has_value();
    const Pattern dropped = drop_signals(p);
    std::optional<ExecutionPlan> eowqs = has_gflow ? std::optional(eowqs_plan(p)) : std::nullopt;

    RunConfig positive;
    positive.mode = Mode::Eowqs;
    positive.policy = PositiveOutcomes{};

    // Per-run engine times; the two modes alternate so that drift in machine
    // load hits both equally. Rows report the median run.
    auto median = [](std::vector<double> t) {
        std::sort(t.begin(), t.end());
        const std::size_t n = t.size();
        return n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
    };
    auto sum = [](const std::vector<double>& t) { return std::accumulate(t.begin(), t.end(), 0.0); };

    out << "family,n,mode,m_peak,wall_ms,seed\n";
    for (std::size_t k = 0; k < a.reps; ++k) {
        const std::uint64_t seed = a.seed + k;
        RunConfig cfg;
        cfg.policy = RandomOutcomes{seed};
        const RunResult r = run(p, owqs_plan, input, cfg);
        std::vector<double> owqs_ms{r.stats.wall_ms};
        std::optional<RunResult> e;
        std::vector<double> eowqs_ms;
        if (eowqs) {
            e = run(dropped, *eowqs, input, positive);
            eowqs_ms.push_back(e->stats.wall_ms);
        }
        while (sum(owqs_ms) < a.min_time_ms || (eowqs && sum(eowqs_ms) < a.min_time_ms)) {
            owqs_ms.push_back(run(p, owqs_plan, input, cfg).stats.wall_ms);
            if (eowqs) eowqs_ms.push_back(run(dropped, *eowqs, input, positive).stats.wall_ms);
        }
        out << a.family << "," << p.qubits.size() << ",owqs," << r.stats.m_peak << "," << format_ms(median(owqs_ms))
            << "," << seed << "\n";
        if (e) {
            out << a.family << "," << p.qubits.size() << ",eowqs," << e->stats.m_peak << ","
                << format_ms(median(eowqs_ms)) << "," << seed << "\n";
        } else {
            out << a.family << "," << p.qubits.size() << ",eowqs,NA,NA," << seed << "\n";
        }
    }
    return kOk;
}

int exit_code_for(const Error& e) {
    if (e.kind() == "usage") return kUsage;
    if (e.kind() == "incorrect") return kIncorrectPattern;
    return kFailure;
}

void report(const std::string& kind, const std::string& message, std::ostream& err) {
    err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"One-way quantum computation pattern simulator", "owqs"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run a pattern and print the result as JSON");
    simulate->add_option("--pattern", sim.pattern, "Pattern file (.owp)")->required();
    simulate->add_option("--input", sim.input, "State JSON file, or 'plus'")->capture_default_str();
    simulate->add_option("--mode", sim.mode, "owqs or eowqs")
        ->check(CLI::IsMember({"owqs", "eowqs"}))
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Seed for random outcomes")->capture_default_str();
    simulate->add_option("--force-outcomes", sim.force, "Outcome bits in plan measurement order");
    simulate->add_flag("--oracle", sim.oracle, "Cross-check against the dense simulator");
    simulate->add_option("--out", sim.out, "Write the JSON here instead of standard output");
    simulate->add_flag("--stats", sim.stats, "Print a stats summary on standard error");

    ReorderArgs ro;
    auto* reorder_cmd = app.add_subcommand("reorder", "Print the PROA execution plan");
    reorder_cmd->add_option("--pattern", ro.pattern, "Pattern file (.owp)")->required();
    reorder_cmd->add_option("--weights", ro.weights, "w_ms,w_os,w_ss,w_flag or 'auto'")->capture_default_str();
    reorder_cmd->add_flag("--json", ro.json, "Print the plan as JSON");

    GflowArgs gf;
    auto* gflow_cmd = app.add_subcommand("gflow-check", "Decide whether the pattern's open graph has a gflow");
    gflow_cmd->add_option("--pattern", gf.pattern, "Pattern file (.owp)")->required();
    gflow_cmd->add_flag("--json", gf.json, "Print the correction sets as JSON");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run generated patterns in both modes and print CSV");
    bench_cmd->add_option("--family", bench.family, "linear, cluster2d, random or file")
        ->required()
        ->check(CLI::IsMember({"linear", "cluster2d", "random", "file"}));
    bench_cmd->add_option("--N", bench.rows, "Cluster rows")->capture_default_str();
    bench_cmd->add_option("--M", bench.cols, "Cluster columns / wire length")->capture_default_str();
    bench_cmd->add_option("--n", bench.n, "Qubits of a random pattern")->capture_default_str();
    bench_cmd->add_option("--density", bench.density, "Extra-edge probability")->capture_default_str();
    bench_cmd->add_option("--angles", bench.angles, "zero, pauli or uniform")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Pattern seed and first run seed")->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps, "Run seeds per mode")->capture_default_str();
    bench_cmd->add_option("--path", bench.path, "Pattern file for --family file");
    bench_cmd->add_flag("--allow-nogflow", bench.allow_nogflow, "Keep random patterns without gflow");
    bench_cmd->add_option("--min-time-ms", bench.min_time_ms, "Repeat each run until this much time accumulates")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report("usage", e.what(), err);
        return kUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim, out, err);
        if (reorder_cmd->parsed()) return cmd_reorder(ro, out);
        if (gflow_cmd->parsed()) return cmd_gflow(gf, out);
        if (bench_cmd->parsed()) return cmd_bench(bench, out);
    } catch (const ValidationError& e) {
        report("validation", e.what(), err);
        return kFailure;
    } catch (const ParseError& e) {
        report("parse", e.what(), err);
        return kFailure;
    } catch (const Error& e) {
        report(e.kind(), e.what(), err);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        report("internal", e.what(), err);
        return kFailure;
    }
    return kUsage;
}

}  // namespace owqs::cli
