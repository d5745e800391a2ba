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

// Dense linear algebra over GF(2), packed 64 bits per word.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace owqs::gf2 {

class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value) {
            words_[i / 64] |= bit;
        } else {
            words_[i / 64] &= ~bit;
        }
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    bool any() const;
    /// Parity of the bitwise AND.
    bool dot(const BitVector& other) const;
    BitVector& operator^=(const BitVector& other);

    friend bool operator==(const BitVector&, const BitVector&) = default;

   private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Row-major matrix of BitVector rows.
class Matrix {
   public:
    Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    BitVector& row(std::size_t r) { return rows_[r]; }
    const BitVector& row(std::size_t r) const { return rows_[r]; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

    BitVector multiply(const BitVector& x) const;

   private:
    std::size_t cols_;
    std::vector<BitVector> rows_;
};

/// Solves A x = b for many right-hand sides of the form e_k by reducing A
/// once. Free variables are set to zero.
class UnitSolver {
   public:
    explicit UnitSolver(const Matrix& a);

    /// x with A x = e_k, or nullopt if the system is inconsistent.
    std::optional<BitVector> solve_unit(std::size_t k) const;
    /// x with A x = b, or nullopt.
    std::optional<BitVector> solve(const BitVector& b) const;
    std::size_t rank() const noexcept { return rank_; }

   private:
    std::size_t cols_;
    Matrix reduced_;    // reduced row echelon form of A
    Matrix transform_;  // T with T A = reduced_
    std::vector<std::size_t> pivot_col_;
    std::size_t rank_ = 0;
};

}  // namespace owqs::gf2
