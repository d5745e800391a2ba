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

// Benchmark and reference patterns.

#pragma once

#include <cstdint>
#include <string_view>

#include "owqs/pattern.hpp"

namespace owqs {

/// N x M grid, qubit (r, c) labelled (c-1)*N + r. Inputs are the first
/// column, outputs the last; every other qubit is measured at angle 0 with
/// the signals of the rightward flow g(r, c) = {(r, c+1)}.
Pattern generate_cluster(std::size_t rows, std::size_t cols);

/// 1 x M cluster: a wire.
Pattern generate_linear(std::size_t length);

enum class AngleSet { Zero, Pauli, Uniform };
AngleSet parse_angle_set(std::string_view name);

struct RandomPatternSpec {
    std::size_t n = 8;
    double density = 0.3;  // probability of each non-tree edge
    AngleSet angles = AngleSet::Uniform;
    std::uint64_t seed = 0;
    bool allow_nogflow = false;
};

/// Random connected graph (spanning tree plus extra edges). Output sets grow
/// until a gflow exists; the signals are those induced by it. With
/// allow_nogflow the first I/O choice is kept and a gflow-less pattern gets
/// no signals.
Pattern generate_random(const RandomPatternSpec& spec);

/// CNOT pattern with inputs {1, 2} and outputs {1, 4}: q1 passes through
/// and q4 carries q1 xor q2.
Pattern cnot_pattern();

/// Eight-qubit SWAP graph with inputs {2, 4} and outputs {6, 8}, all angles
/// 0, signals induced by its gflow.
Pattern swap_pattern();

}  // namespace owqs
