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

// Dense reference simulator. Every operator is an explicit Kronecker product
// over the full register; nothing here reuses the sub-state kernels.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "owqs/engine.hpp"
#include "owqs/pattern.hpp"

namespace owqs::oracle {

inline constexpr std::size_t kDenseLimit = 14;

/// Amplitudes over `qubits` (ascending id); qubit of rank r owns bit r-1.
struct DenseState {
    std::vector<QubitId> qubits;
    Eigen::VectorXcd amps;
};

/// |+a> and |-a> = (|0> +- e^{ia}|1>)/sqrt(2).
struct MeasBasisVectors {
    Eigen::Vector2cd plus_alpha;
    Eigen::Vector2cd minus_alpha;

    static MeasBasisVectors from_angle(double alpha);
};

/// |b><b| onto the basis vector of outcome b.
Eigen::Matrix2cd projector(double alpha, int outcome);
/// H * Rz(-alpha), which maps |+a> to |0> and |-a> to |1>.
Eigen::Matrix2cd basis_change(double alpha);

/// I (x) ... (x) u (x) ... (x) I acting on position `pos` of an m-qubit register.
Eigen::MatrixXcd embed(const Eigen::Matrix2cd& u, std::size_t pos, std::size_t m);
/// Controlled-Z between two positions as a dense 2^m x 2^m matrix.
Eigen::MatrixXcd cz_matrix(std::size_t pos_a, std::size_t pos_b, std::size_t m);

enum class KernelOp { CZ, X, Z, Measure };

struct KernelParams {
    std::size_t pos = 1;
    std::size_t pos_b = 2;  // CZ partner
    double angle = 0.0;     // Measure
    int outcome = 0;        // Measure
};

/// Literal matrix-vector product on a small register (m <= 4). Measure
/// returns H Rz(-a) P_b psi / sqrt(prob), leaving the measured axis in |b>.
Eigen::VectorXcd dense_kernel_reference(KernelOp op, const Eigen::VectorXcd& state, const KernelParams& params);

struct DenseRun {
    DenseState output;                // restricted to O
    std::map<QubitId, double> prob0;  // per measured qubit
    std::map<QubitId, int> outcomes;
};

/// Entangle-all-then-measure simulation of `p` in pattern order with the
/// given outcome for every measured qubit. Throws Error("oracle") on an
/// impossible branch, a register over the dense limit or a measured qubit
/// left entangled.
DenseRun dense_run(const Pattern& p, const InputStateSpec& input, const std::map<QubitId, int>& forced);

/// Same, with outcomes listed in the pattern's measurement order.
DenseRun dense_run(const Pattern& p, const InputStateSpec& input, const std::vector<int>& forced);

}  // namespace owqs::oracle
