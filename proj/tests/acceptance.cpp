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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Details of a failure go to standard error.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "owqs/cli.hpp"
#include "owqs/engine.hpp"
#include "owqs/generators.hpp"
#include "owqs/gflow.hpp"
#include "owqs/kernels.hpp"
#include "owqs/oracle.hpp"
#include "owqs/scheduler.hpp"
#include "owqs/state_space.hpp"
#include "support/cnot_trace.hpp"
#include "support/graphs.hpp"
#include "support/random_states.hpp"

using namespace owqs;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Collects failure notes for one criterion.
struct Check {
    std::vector<std::string> notes;
    std::string summary;

    void fail(const std::string& note) { notes.push_back(note); }
    bool ok() const { return notes.empty(); }
};

// 1 -----------------------------------------------------------------------

Check cnot_golden_trace() {
    Check c;
    // First call warms up allocations; the timed call is the second one.
    testing::cnot_trace_mismatches();
    const auto start = Clock::now();
    for (const std::string& s : testing::cnot_trace_mismatches(1e-12)) c.fail(s);
    const double ms = ms_since(start);
    if (ms >= 10.0) c.fail("took " + std::to_string(ms) + " ms");
    std::ostringstream os;
    os << "trace snapshots (a)-(f) and |01> output, " << std::setprecision(3) << ms << " ms";
    c.summary = os.str();
    return c;
}

// 2 -----------------------------------------------------------------------

Check cnot_truth_table() {
    Check c;
    const Pattern p = cnot_pattern();
    const ExecutionPlan plan = tune_weights(p).plan;
    std::size_t runs = 0;
    for (std::uint64_t input = 0; input < 4; ++input) {
        // Inputs (q1, q2) = bits of `input`; q1 is the control, q4 the target.
        const int q1 = static_cast<int>(input & 1);
        const int q2 = static_cast<int>(input >> 1 & 1);
        const SubState want({QubitId{1}, QubitId{4}}, Amplitudes<double>::Unit(4, q1 | (q1 ^ q2) << 1));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RunConfig cfg;
            cfg.policy = RandomOutcomes{seed};
            const RunResult r = run(p, plan, InputStateSpec::basis(p, input), cfg);
            if (!states_equal_up_to_phase(r.output_state(), want, 1e-10)) {
                c.fail("input " + std::to_string(input) + " seed " + std::to_string(seed));
            }
            ++runs;
        }
    }
    c.summary = std::to_string(runs) + " runs against the CNOT matrix";
    return c;
}

// 3 -----------------------------------------------------------------------

Check swap_table() {
    Check c;
    const TunedPlan tuned = tune_weights(swap_pattern());
    const std::vector<std::size_t> sizes = tuned.plan.predicted_ms();
    if (tuned.plan.predicted_peak != 3) c.fail("peak " + std::to_string(tuned.plan.predicted_peak));
    if (sizes != std::vector<std::size_t>{2, 3, 3, 3, 3, 3}) c.fail("per-step sizes differ");
    std::ostringstream os;
    os << "peak " << tuned.plan.predicted_peak << ", sizes";
    for (std::size_t s : sizes) os << " " << s;
    c.summary = os.str();
    return c;
}

// 4 and 5 -----------------------------------------------------------------

struct SuiteResult {
    Check equivalence;
    Check fair_coin;
};

SuiteResult oracle_suite() {
    SuiteResult out;
    std::mt19937_64 rng(20261016);
    const auto start = Clock::now();
    std::size_t patterns = 0;
    std::size_t probs = 0;
    double worst = 0.0;
    double worst_prob = 0.0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const std::size_t n = 2 + seed % 9;
        const double density = 0.15 + 0.1 * static_cast<double>(seed % 4);
        const Pattern p = generate_random({n, density, AngleSet::Uniform, 1000 + seed, false});
        if (!find_gflow(OpenGraph::from_pattern(p))) {
            out.equivalence.fail("generated pattern without gflow, seed " + std::to_string(seed));
            continue;
        }
        const InputStateSpec in = testing::random_input(p, rng);
        const auto branch = testing::random_branch(p, rng);
        const ExecutionPlan plan = tune_weights(p, in.schedule_options()).plan;
        RunConfig cfg;
        cfg.policy = ForcedOutcomes{testing::plan_bits(plan, branch)};
        const RunResult r = run(p, plan, in, cfg);
        const oracle::DenseRun dense = oracle::dense_run(p, in, branch);
        const double dev = testing::max_deviation(testing::full_output(r), testing::as_substate(dense.output));
        worst = std::max(worst, dev);
        if (dev > 1e-10) out.equivalence.fail("seed " + std::to_string(seed) + " deviates by " + std::to_string(dev));
        for (double pr : r.stats.probs) {
            worst_prob = std::max(worst_prob, std::abs(pr - 0.5));
            if (std::abs(pr - 0.5) > 1e-9) out.fair_coin.fail("seed " + std::to_string(seed) + " prob0 " + std::to_string(pr));
            ++probs;
        }
        ++patterns;
    }
    const double ms = ms_since(start);
    if (patterns < 100) out.equivalence.fail("only " + std::to_string(patterns) + " patterns");
    if (ms >= 60000.0) out.equivalence.fail("took " + std::to_string(ms) + " ms");
    std::ostringstream os;
    os << patterns << " patterns, max deviation " << std::setprecision(3) << worst << ", " << ms / 1000.0 << " s";
    out.equivalence.summary = os.str();
    std::ostringstream fs;
    fs << probs << " measurements, max |prob0 - 0.5| " << std::setprecision(3) << worst_prob;
    out.fair_coin.summary = fs.str();
    return out;
}

// 6 and 7 -----------------------------------------------------------------

struct BenchRow {
    std::string mode;
    std::string m_peak;
    double wall_ms = 0.0;
};

struct BenchCase {
    std::string label;
    std::vector<std::string> args;
    std::vector<BenchRow> rows;
};

constexpr int kSeeds = 10;
constexpr const char* kMinTimeMs = "5";

std::vector<BenchRow> bench(const std::vector<std::string>& extra, int reps = kSeeds) {
    std::vector<std::string> args{"bench", "--reps", std::to_string(reps), "--min-time-ms", kMinTimeMs};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream out;
    std::ostringstream err;
    if (cli::main(args, out, err) != cli::kOk) throw std::runtime_error("bench failed: " + err.str());
    std::vector<BenchRow> rows;
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cells_in(line);
        std::string cell;
        while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
        BenchRow row{cells.at(2), cells.at(3), 0.0};
        row.wall_ms = cells.at(4) == "NA" ? -1.0 : std::stod(cells.at(4));
        rows.push_back(row);
    }
    return rows;
}

double median_wall(const BenchCase& b, const std::string& mode) {
    std::vector<double> t;
    for (const BenchRow& r : b.rows) {
        if (r.mode == mode) t.push_back(r.wall_ms);
    }
    return median(t);
}

std::vector<std::size_t> peaks(const BenchCase& b, const std::string& mode) {
    std::vector<std::size_t> out;
    for (const BenchRow& r : b.rows) {
        if (r.mode == mode) out.push_back(r.m_peak == "NA" ? 0 : std::stoul(r.m_peak));
    }
    return out;
}

const std::vector<std::size_t> kClusterCols{8, 32, 64};

/// Grid sizes are visited round-robin, one seed per round, so that slow
/// drift in machine speed affects every M alike.
std::map<std::pair<std::size_t, std::size_t>, BenchCase> cluster_suite() {
    std::map<std::pair<std::size_t, std::size_t>, BenchCase> out;
    for (int seed = 0; seed < kSeeds; ++seed) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t m : kClusterCols) {
                BenchCase& b = out[{n, m}];
                b.label = "cluster2d " + std::to_string(n) + "x" + std::to_string(m);
                b.args = {"--family", "cluster2d", "--N", std::to_string(n), "--M", std::to_string(m)};
                const std::vector<std::string> args{"--family", "cluster2d", "--N", std::to_string(n), "--M",
                                                    std::to_string(m), "--seed", std::to_string(seed)};
                for (BenchRow& row : bench(args, 1)) b.rows.push_back(row);
            }
        }
    }
    return out;
}

Check cluster_scaling(const std::map<std::pair<std::size_t, std::size_t>, BenchCase>& clusters) {
    Check c;
    double worst_ratio = 0.0;
    for (const auto& [key, b] : clusters) {
        for (const char* mode : {"owqs", "eowqs"}) {
            for (std::size_t peak : peaks(b, mode)) {
                if (peak != key.first + 1) c.fail(b.label + " " + mode + " m_peak " + std::to_string(peak));
            }
        }
    }
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const char* mode : {"owqs", "eowqs"}) {
            const double base = median_wall(clusters.at({n, kClusterCols.front()}), mode) /
                                static_cast<double>(kClusterCols.front());
            for (std::size_t m : kClusterCols) {
                const double per_col = median_wall(clusters.at({n, m}), mode) / static_cast<double>(m);
                const double ratio = per_col / base;
                worst_ratio = std::max(worst_ratio, ratio);
                if (ratio > 2.0) {
                    std::ostringstream os;
                    os << "N=" << n << " M=" << m << " " << mode << " per-column time " << ratio << "x the M="
                       << kClusterCols.front() << " rate";
                    c.fail(os.str());
                }
            }
        }
    }
    std::ostringstream os;
    os << "m_peak = N+1 on 12 grids, worst per-column time ratio " << std::setprecision(3) << worst_ratio;
    c.summary = os.str();
    return c;
}

Check eowqs_dominance(const std::map<std::pair<std::size_t, std::size_t>, BenchCase>& clusters) {
    Check c;
    std::vector<BenchCase> suite;
    for (const auto& [key, b] : clusters) suite.push_back(b);
    for (std::size_t m : {8, 32, 64}) {
        BenchCase b;
        b.label = "linear " + std::to_string(m);
        b.args = {"--family", "linear", "--M", std::to_string(m)};
        suite.push_back(b);
    }
    for (std::size_t n : {6, 8, 10, 12, 14, 16}) {
        for (std::uint64_t seed : {1, 2, 3}) {
            BenchCase b;
            b.label = "random n=" + std::to_string(n) + " seed " + std::to_string(seed);
            b.args = {"--family", "random", "--n", std::to_string(n), "--seed", std::to_string(seed)};
            suite.push_back(b);
        }
    }
    for (const char* file : {"cnot.owp", "swap.owp"}) {
        BenchCase b;
        b.label = file;
        b.args = {"--family", "file", "--path", std::string(OWQS_DATA_DIR) + "/patterns/" + file};
        suite.push_back(b);
    }

    double worst = 0.0;
    for (BenchCase& b : suite) {
        if (b.rows.empty()) b.rows = bench(b.args);
        const auto po = peaks(b, "owqs");
        const auto pe = peaks(b, "eowqs");
        for (std::size_t k = 0; k < po.size(); ++k) {
            if (pe.at(k) == 0 || pe[k] > po[k]) c.fail(b.label + ": EOWQS peak above OWQS");
        }
        const double to = median_wall(b, "owqs");
        const double te = median_wall(b, "eowqs");
        worst = std::max(worst, te / to);
        if (te > to) {
            std::ostringstream os;
            os << b.label << ": median EOWQS " << te << " ms > OWQS " << to << " ms";
            c.fail(os.str());
        }
    }
    std::ostringstream os;
    os << suite.size() << " bench patterns, worst EOWQS/OWQS median time " << std::setprecision(3) << worst;
    c.summary = os.str();
    return c;
}

// 8 -----------------------------------------------------------------------

Check operator_identities() {
    Check c;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = angle(rng);
        const auto ops = MeasurementOperators<double>::from_angle(a);
        Eigen::Matrix2cd m0 = Eigen::Matrix2cd::Zero();
        Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Zero();
        m0(0, 0) = ops.m00;
        m0(0, 1) = ops.m01;
        m1(1, 0) = ops.m10p;
        m1(1, 1) = ops.m11p;
        const Eigen::Matrix2cd p0 = oracle::projector(a, 0);
        const Eigen::Matrix2cd p1 = oracle::projector(a, 1);
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        for (const Eigen::Matrix2cd& d : {Eigen::Matrix2cd(m0.adjoint() * m0 - p0), Eigen::Matrix2cd(m1.adjoint() * m1 - p1),
                                          Eigen::Matrix2cd(p0 + p1 - id),
                                          Eigen::Matrix2cd(m0.adjoint() * m0 + m1.adjoint() * m1 - id)}) {
            worst = std::max(worst, d.cwiseAbs().maxCoeff());
        }
    }
    if (worst > 1e-12) c.fail("max element error " + std::to_string(worst));
    std::ostringstream os;
    os << "1000 angles, max element error " << std::setprecision(3) << worst;
    c.summary = os.str();
    return c;
}

// 9 -----------------------------------------------------------------------

Check kernel_equivalence() {
    Check c;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    std::size_t cases = 0;
    auto diff = [](const Amplitudes<double>& a, const Eigen::VectorXcd& b) { return (a - b).cwiseAbs().maxCoeff(); };
    for (std::size_t m = 1; m <= 4; ++m) {
        for (int trial = 0; trial < 25; ++trial) {
            const Amplitudes<double> psi = testing::random_amplitudes(m, rng);
            for (std::size_t pos = 1; pos <= m; ++pos) {
                Amplitudes<double> x = psi;
                apply_x(x, pos);
                worst = std::max(worst, diff(x, oracle::dense_kernel_reference(oracle::KernelOp::X, psi, {pos})));
                Amplitudes<double> z = psi;
                apply_z(z, pos);
                worst = std::max(worst, diff(z, oracle::dense_kernel_reference(oracle::KernelOp::Z, psi, {pos})));
                for (std::size_t other = 1; other <= m; ++other) {
                    if (other == pos) continue;
                    Amplitudes<double> cz = psi;
                    apply_cz(cz, pos, other);
                    worst = std::max(worst, diff(cz, oracle::dense_kernel_reference(oracle::KernelOp::CZ, psi,
                                                                                     {pos, other})));
                }
                for (int outcome = 0; outcome < 2; ++outcome) {
                    const double a = angle(rng);
                    const Eigen::VectorXcd dense =
                        oracle::dense_kernel_reference(oracle::KernelOp::Measure, psi, {pos, 2, a, outcome});
                    if (dense.norm() == 0.0) continue;
                    std::vector<QubitId> order;
                    for (std::size_t k = 1; k <= m; ++k) order.push_back(QubitId{static_cast<std::uint32_t>(k)});
                    StateSpace space;
                    space.load(SubState(order, psi));
                    space.measure_eliminate(order[pos - 1], a, ForcedOutcome{outcome});
                    if (m == 1) continue;
                    const SubState& s = space.substate(space.substate_of(order[pos == 1 ? 1 : 0]));
                    const std::uint64_t low = (std::uint64_t{1} << (pos - 1)) - 1;
                    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (m - 1)); ++i) {
                        const std::uint64_t j =
                            (i & low) | ((i & ~low) << 1) | (static_cast<std::uint64_t>(outcome) << (pos - 1));
                        worst = std::max(worst, std::abs(s.amps(static_cast<Eigen::Index>(i)) -
                                                         dense(static_cast<Eigen::Index>(j))));
                    }
                }
                ++cases;
            }
        }
    }
    if (worst > 1e-12) c.fail("max amplitude error " + std::to_string(worst));
    std::ostringstream os;
    os << cases << " state/position cases, max amplitude error " << std::setprecision(3) << worst;
    c.summary = os.str();
    return c;
}

// 10 ----------------------------------------------------------------------

Check gflow_exhaustive() {
    Check c;
    const auto start = Clock::now();
    std::size_t graphs = 0;
    std::size_t open_graphs = 0;
    std::size_t with_flow = 0;
    for (unsigned n = 1; n <= 6; ++n) {
        for (const testing::SmallGraph& g : testing::connected_graphs(n)) {
            ++graphs;
            const std::uint32_t full = (1u << n) - 1;
            for (std::uint32_t outputs = 1; outputs <= full; ++outputs) {
                for (std::uint32_t inputs = 0; inputs <= full; ++inputs) {
                    const OpenGraph og = testing::open_graph(g, inputs, outputs);
                    const auto brute = testing::BruteForceGflow(g, inputs, outputs).search();
                    const auto found = find_gflow(og);
                    ++open_graphs;
                    if (brute.has_value() != found.has_value()) {
                        c.fail("disagreement on n=" + std::to_string(n) + " I=" + std::to_string(inputs) +
                               " O=" + std::to_string(outputs));
                        continue;
                    }
                    if (!brute) continue;
                    ++with_flow;
                    if (!verify_gflow(og, *found)) c.fail("finder returned an invalid gflow");
                    if (!verify_gflow(og, *brute)) c.fail("exhaustive witness rejected by verify_gflow");
                }
            }
        }
    }
    const double ms = ms_since(start);
    if (ms >= 5 * 60 * 1000.0) c.fail("took " + std::to_string(ms / 1000.0) + " s");
    std::ostringstream os;
    os << graphs << " graphs, " << open_graphs << " open graphs (" << with_flow << " with gflow), "
       << std::setprecision(3) << ms / 1000.0 << " s";
    c.summary = os.str();
    return c;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string& name, const Check& c) {
        std::cout << (c.ok() ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << name << ": "
                  << c.summary << std::endl;
        for (std::size_t k = 0; k < c.notes.size() && k < 20; ++k) std::cerr << "    " << c.notes[k] << "\n";
        if (!c.ok()) ++failures;
    };
    auto guarded = [](const std::function<Check()>& f) {
        try {
            return f();
        } catch (const std::exception& e) {
            Check c;
            c.fail(e.what());
            c.summary = std::string("exception: ") + e.what();
            return c;
        }
    };

    report(1, "CNOT golden trace", guarded(cnot_golden_trace));
    report(2, "CNOT truth table", guarded(cnot_truth_table));
    report(3, "SWAP reordering table", guarded(swap_table));
    SuiteResult suite;
    try {
        suite = oracle_suite();
    } catch (const std::exception& e) {
        suite.equivalence.fail(e.what());
        suite.fair_coin.fail(e.what());
    }
    report(4, "oracle equivalence", suite.equivalence);
    report(5, "fair coin", suite.fair_coin);
    std::map<std::pair<std::size_t, std::size_t>, BenchCase> clusters;
    try {
        clusters = cluster_suite();
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
    }
    report(6, "cluster scaling", guarded([&] { return cluster_scaling(clusters); }));
    report(7, "EOWQS dominance", guarded([&] { return eowqs_dominance(clusters); }));
    report(8, "measurement operator identities", guarded(operator_identities));
    report(9, "kernel equivalence", guarded(kernel_equivalence));
    report(10, "gflow finder vs exhaustive search", guarded(gflow_exhaustive));

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
