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

// Generalized flow for open graphs with XY-plane measurements.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "owqs/pattern.hpp"

namespace owqs {

struct OpenGraph {
    EntanglementGraph graph;
    std::vector<QubitId> inputs;   // sorted
    std::vector<QubitId> outputs;  // sorted

    static OpenGraph from_pattern(const Pattern& p);
    /// Vertices outside O, ascending.
    std::vector<QubitId> measured() const;
};

/// Correction sets g(v) for every measured vertex, with a layering that
/// witnesses the partial order. Layers count backwards from the outputs:
/// outputs sit in layer 0 and a vertex in layer k is measured before every
/// vertex of a lower layer.
struct GFlow {
    std::map<QubitId, std::vector<QubitId>> correction_sets;
    std::map<QubitId, std::size_t> layering;

    std::size_t layer_count() const;
    /// Measured vertices, earliest layer first, ascending id within a layer.
    std::vector<QubitId> measurement_order() const;
};

/// Vertices adjacent to an odd number of members of `set`, ascending.
std::vector<QubitId> odd_neighborhood(const EntanglementGraph& g, const std::vector<QubitId>& set);

/// Layered backward construction solving one GF(2) system per layer.
/// nullopt when the open graph has no gflow.
std::optional<GFlow> find_gflow(const OpenGraph& og);

/// Checks the gflow conditions from scratch.
bool verify_gflow(const OpenGraph& og, const GFlow& g);

/// The pattern whose signals are induced by `flow`: all entanglements in
/// graph order, measurements earliest layer first with their X/Z byproducts
/// folded into s/t signals, then X and Z corrections on the outputs.
Pattern pattern_from_gflow(const OpenGraph& og, const GFlow& flow, const std::map<QubitId, double>& angles);

/// True iff `p`'s signals equal those induced by `flow`. s-signals on
/// measurements whose angle is 0 or pi are ignored since they cannot change
/// the basis.
bool signals_match_gflow(const Pattern& p, const GFlow& flow);

}  // namespace owqs
