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

#include "owqs/oracle.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

namespace owqs::oracle {

namespace {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;

constexpr double kSliceTolerance = 1e-10;
constexpr double kImpossible = 1e-12;

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd ket_one_projector() {
    Eigen::Matrix2cd m;
    m << 0, 0, 0, 1;
    return m;
}

SparseOp sparse_identity(std::size_t dim) {
    SparseOp id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    id.setIdentity();
    return id;
}

SparseOp embed_sparse(const Eigen::Matrix2cd& u, std::size_t pos, std::size_t n) {
    const SparseOp low = sparse_identity(std::size_t{1} << (pos - 1));
    const SparseOp high = sparse_identity(std::size_t{1} << (n - pos));
    const SparseOp mid = u.sparseView();
    SparseOp inner = Eigen::kroneckerProduct(mid, low);
    SparseOp full = Eigen::kroneckerProduct(high, inner);
    return full;
}

SparseOp cz_sparse(std::size_t a, std::size_t b, std::size_t n) {
    const SparseOp both = embed_sparse(ket_one_projector(), a, n) * embed_sparse(ket_one_projector(), b, n);
    SparseOp out = sparse_identity(std::size_t{1} << n) - 2.0 * both;
    return out;
}

}  // namespace

MeasBasisVectors MeasBasisVectors::from_angle(double alpha) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex phase = std::exp(Complex(0.0, alpha));
    MeasBasisVectors out;
    out.plus_alpha << r, r * phase;
    out.minus_alpha << r, -r * phase;
    return out;
}

Eigen::Matrix2cd projector(double alpha, int outcome) {
    const MeasBasisVectors basis = MeasBasisVectors::from_angle(alpha);
    const Eigen::Vector2cd& v = outcome ? basis.minus_alpha : basis.plus_alpha;
    return v * v.adjoint();
}

Eigen::Matrix2cd basis_change(double alpha) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
    rz(0, 0) = 1.0;
    rz(1, 1) = std::exp(Complex(0.0, -alpha));
    return h * rz;
}

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& u, std::size_t pos, std::size_t m) {
    if (pos < 1 || pos > m) throw Error("oracle", "position outside the register");
    const Eigen::MatrixXcd low = Eigen::MatrixXcd::Identity(1 << (pos - 1), 1 << (pos - 1));
    const Eigen::MatrixXcd high = Eigen::MatrixXcd::Identity(1 << (m - pos), 1 << (m - pos));
    const Eigen::MatrixXcd inner = Eigen::kroneckerProduct(u, low);
    return Eigen::kroneckerProduct(high, inner);
}

Eigen::MatrixXcd cz_matrix(std::size_t pos_a, std::size_t pos_b, std::size_t m) {
    if (pos_a == pos_b) throw Error("oracle", "CZ needs two distinct positions");
    const Eigen::MatrixXcd both = embed(ket_one_projector(), pos_a, m) * embed(ket_one_projector(), pos_b, m);
    const auto dim = Eigen::Index{1} << m;
    return Eigen::MatrixXcd::Identity(dim, dim) - 2.0 * both;
}

Eigen::VectorXcd dense_kernel_reference(KernelOp op, const Eigen::VectorXcd& state, const KernelParams& params) {
    std::size_t m = 0;
    while ((Eigen::Index{1} << m) < state.size()) ++m;
    if ((Eigen::Index{1} << m) != state.size()) throw Error("oracle", "state length is not a power of two");
    switch (op) {
        case KernelOp::CZ: return cz_matrix(params.pos, params.pos_b, m) * state;
        case KernelOp::X: return embed(pauli_x(), params.pos, m) * state;
        case KernelOp::Z: return embed(pauli_z(), params.pos, m) * state;
        case KernelOp::Measure: {
            const Eigen::VectorXcd projected = embed(projector(params.angle, params.outcome), params.pos, m) * state;
            const double prob = std::real(state.dot(projected));
            if (prob < kImpossible) throw Error("oracle", "impossible measurement branch");
            return embed(basis_change(params.angle), params.pos, m) * projected / std::sqrt(prob);
        }
    }
    throw Error("oracle", "unknown kernel op");
}

DenseRun dense_run(const Pattern& p, const InputStateSpec& input, const std::map<QubitId, int>& forced) {
    const std::size_t n = p.qubits.size();
    if (n > kDenseLimit) throw Error("oracle", "pattern has " + std::to_string(n) + " qubits, over the dense limit");
    input.check(p);
    auto rank = [&](QubitId q) {
        return static_cast<std::size_t>(std::lower_bound(p.qubits.begin(), p.qubits.end(), q) - p.qubits.begin()) + 1;
    };

    // Product of the input groups and |+> on every other qubit.
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
    const double plus = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < dim; ++i) {
        Complex amp = 1.0;
        for (const InputGroup& g : input.groups) {
            std::size_t local = 0;
            for (std::size_t k = 0; k < g.qubits.size(); ++k) local |= ((i >> (rank(g.qubits[k]) - 1)) & 1u) << k;
            amp *= g.amps(static_cast<Eigen::Index>(local));
        }
        for (QubitId q : p.qubits) {
            if (!p.is_input(q)) amp *= plus;
        }
        psi(static_cast<Eigen::Index>(i)) = amp;
    }

    DenseRun out;
    std::map<QubitId, int> measured_axis;
    auto signal_value = [&](const Signal& s) {
        int v = 0;
        for (QubitId q : s.terms()) {
            auto it = out.outcomes.find(q);
            if (it == out.outcomes.end()) throw Error("oracle", "signal reads an unmeasured qubit");
            v ^= it->second;
        }
        return v;
    };

    for (const Action& a : p.actions) {
        if (const auto* e = std::get_if<Entangle>(&a)) {
            psi = cz_sparse(rank(e->u), rank(e->v), n) * psi;
        } else if (const auto* m = std::get_if<Measure>(&a)) {
            auto it = forced.find(m->qubit);
            if (it == forced.end()) throw Error("oracle", "no forced outcome for qubit " + std::to_string(to_int(m->qubit)));
            const int bit = it->second ? 1 : 0;
            double angle = m->angle;
            if (signal_value(m->s)) angle = -angle;
            if (signal_value(m->t)) angle += std::numbers::pi;
            const std::size_t r = rank(m->qubit);
            const Eigen::VectorXcd zero_branch = embed_sparse(projector(angle, 0), r, n) * psi;
            const double prob0 = std::real(psi.dot(zero_branch));
            const double prob = bit ? 1.0 - prob0 : prob0;
            if (prob < kImpossible) throw Error("oracle", "forced outcome has probability " + std::to_string(prob));
            const Eigen::VectorXcd projected = bit ? Eigen::VectorXcd(embed_sparse(projector(angle, 1), r, n) * psi)
                                                   : zero_branch;
            psi = embed_sparse(basis_change(angle), r, n) * projected / std::sqrt(prob);
            out.prob0[m->qubit] = prob0;
            out.outcomes[m->qubit] = bit;
            measured_axis[m->qubit] = bit;
        } else if (const auto* x = std::get_if<CorrectX>(&a)) {
            if (signal_value(x->signal)) psi = embed_sparse(pauli_x(), rank(x->qubit), n) * psi;
        } else if (const auto* z = std::get_if<CorrectZ>(&a)) {
            if (signal_value(z->signal)) psi = embed_sparse(pauli_z(), rank(z->qubit), n) * psi;
        }
    }

    // Slice away the measured axes after checking they are in product form.
    std::size_t keep_mask = 0;
    std::size_t fixed_bits = 0;
    for (const auto& [q, bit] : measured_axis) {
        if (bit) fixed_bits |= std::size_t{1} << (rank(q) - 1);
    }
    std::size_t measured_mask = 0;
    for (const auto& [q, bit] : measured_axis) measured_mask |= std::size_t{1} << (rank(q) - 1);
    for (QubitId q : p.outputs) keep_mask |= std::size_t{1} << (rank(q) - 1);
    if ((keep_mask | measured_mask) != dim - 1) throw Error("oracle", "pattern leaves unmeasured non-output qubits");

    out.output.qubits = p.outputs;
    out.output.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << p.outputs.size());
    for (std::size_t i = 0; i < dim; ++i) {
        const Complex amp = psi(static_cast<Eigen::Index>(i));
        if ((i & measured_mask) != fixed_bits) {
            if (std::abs(amp) > kSliceTolerance) throw Error("oracle", "measured qubit is not in product form");
            continue;
        }
        std::size_t local = 0;
        for (std::size_t k = 0; k < p.outputs.size(); ++k) local |= ((i >> (rank(p.outputs[k]) - 1)) & 1u) << k;
        out.output.amps(static_cast<Eigen::Index>(local)) = amp;
    }
    return out;
}

DenseRun dense_run(const Pattern& p, const InputStateSpec& input, const std::vector<int>& forced) {
    const std::vector<QubitId> order = measurement_order(p);
    if (forced.size() != order.size()) throw Error("oracle", "forced outcome count differs from the measurement count");
    std::map<QubitId, int> keyed;
    for (std::size_t k = 0; k < order.size(); ++k) keyed[order[k]] = forced[k];
    return dense_run(p, input, keyed);
}

}  // namespace owqs::oracle
