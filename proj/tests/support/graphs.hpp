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

// Small-graph enumeration and an exhaustive gflow search used as an oracle
// for the GF(2) finder.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "owqs/gflow.hpp"

namespace owqs::testing {

/// Graph on vertices 0..n-1 as one adjacency bitmask per vertex.
struct SmallGraph {
    unsigned n = 0;
    std::vector<std::uint32_t> adj;
};

inline bool connected(const SmallGraph& g) {
    if (g.n == 0) return true;
    std::uint32_t seen = 1;
    std::uint32_t frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (unsigned v = 0; v < g.n; ++v) {
            if (frontier >> v & 1u) next |= g.adj[v];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << g.n) - 1;
}

/// Edge bitmask over the n(n-1)/2 pairs (a < b) in lexicographic order.
inline std::uint32_t edge_code(const SmallGraph& g, const std::vector<unsigned>& perm) {
    std::uint32_t code = 0;
    unsigned bit = 0;
    for (unsigned a = 0; a < g.n; ++a) {
        for (unsigned b = a + 1; b < g.n; ++b, ++bit) {
            if (g.adj[perm[a]] >> perm[b] & 1u) code |= 1u << bit;
        }
    }
    return code;
}

inline SmallGraph from_code(unsigned n, std::uint32_t code) {
    SmallGraph g{n, std::vector<std::uint32_t>(n, 0)};
    unsigned bit = 0;
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = a + 1; b < n; ++b, ++bit) {
            if (code >> bit & 1u) {
                g.adj[a] |= 1u << b;
                g.adj[b] |= 1u << a;
            }
        }
    }
    return g;
}

/// One representative per isomorphism class of connected graphs on n vertices.
inline std::vector<SmallGraph> connected_graphs(unsigned n) {
    const unsigned pairs = n * (n - 1) / 2;
    std::set<std::uint32_t> canonical;
    std::vector<unsigned> perm(n);
    for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
        const SmallGraph g = from_code(n, code);
        if (!connected(g)) continue;
        std::iota(perm.begin(), perm.end(), 0u);
        std::uint32_t best = code;
        do {
            best = std::min(best, edge_code(g, perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        canonical.insert(best);
    }
    std::vector<SmallGraph> out;
    for (std::uint32_t code : canonical) out.push_back(from_code(n, code));
    return out;
}

inline QubitId vertex_id(unsigned v) { return QubitId{v + 1}; }

inline OpenGraph open_graph(const SmallGraph& g, std::uint32_t inputs, std::uint32_t outputs) {
    OpenGraph og;
    for (unsigned v = 0; v < g.n; ++v) {
        og.graph.vertices.push_back(vertex_id(v));
        if (inputs >> v & 1u) og.inputs.push_back(vertex_id(v));
        if (outputs >> v & 1u) og.outputs.push_back(vertex_id(v));
        for (unsigned w = v + 1; w < g.n; ++w) {
            if (g.adj[v] >> w & 1u) og.graph.edges.emplace_back(vertex_id(v), vertex_id(w));
        }
    }
    return og;
}

/// Exhaustive search: builds the measurement order backwards from the
/// outputs, trying every vertex as the next-earlier one and every subset of
/// the already placed non-inputs as its correction set.
class BruteForceGflow {
   public:
    BruteForceGflow(const SmallGraph& g, std::uint32_t inputs, std::uint32_t outputs)
        : g_(g), inputs_(inputs), outputs_(outputs), full_((1u << g.n) - 1), failed_(std::size_t{1} << g.n, false) {
        odd_.resize(std::size_t{1} << g.n);
        for (std::uint32_t set = 0; set <= full_; ++set) {
            std::uint32_t odd = 0;
            for (unsigned v = 0; v < g.n; ++v) {
                if (set >> v & 1u) odd ^= g.adj[v];
            }
            odd_[set] = odd;
        }
    }

    std::optional<GFlow> search() {
        chosen_.clear();
        if (!extend(outputs_)) return std::nullopt;
        GFlow flow;
        for (unsigned v = 0; v < g_.n; ++v) {
            if (outputs_ >> v & 1u) flow.layering[vertex_id(v)] = 0;
        }
        std::size_t layer = 1;
        for (const auto& [v, set] : chosen_) {
            std::vector<QubitId> g;
            for (unsigned u = 0; u < g_.n; ++u) {
                if (set >> u & 1u) g.push_back(vertex_id(u));
            }
            flow.correction_sets[vertex_id(v)] = std::move(g);
            flow.layering[vertex_id(v)] = layer++;
        }
        return flow;
    }

   private:
    bool extend(std::uint32_t placed) {
        if (placed == full_) return true;
        if (failed_[placed]) return false;
        const std::uint32_t pool = placed & ~inputs_;
        for (unsigned v = 0; v < g_.n; ++v) {
            if (placed >> v & 1u) continue;
            // Enumerate every subset of pool.
            for (std::uint32_t sub = pool;; sub = (sub - 1) & pool) {
                if ((odd_[sub] & ~placed) == (1u << v)) {
                    chosen_.emplace_back(v, sub);
                    if (extend(placed | (1u << v))) return true;
                    chosen_.pop_back();
                    break;  // the rest only depends on the placed set
                }
                if (sub == 0) break;
            }
        }
        failed_[placed] = true;
        return false;
    }

    SmallGraph g_;
    std::uint32_t inputs_;
    std::uint32_t outputs_;
    std::uint32_t full_;
    std::vector<std::uint32_t> odd_;
    std::vector<bool> failed_;
    std::vector<std::pair<unsigned, std::uint32_t>> chosen_;
};

}  // namespace owqs::testing
