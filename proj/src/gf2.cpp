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

#include "owqs/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace owqs::gf2 {

bool BitVector::any() const {
    for (std::uint64_t w : words_) {
        if (w) return true;
    }
    return false;
}

bool BitVector::dot(const BitVector& other) const {
    if (other.size_ != size_) throw std::invalid_argument("GF(2) size mismatch");
    int parity = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) parity ^= std::popcount(words_[i] & other.words_[i]) & 1;
    return parity != 0;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("GF(2) size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector Matrix::multiply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("GF(2) size mismatch");
    BitVector y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) y.set(r, rows_[r].dot(x));
    return y;
}

UnitSolver::UnitSolver(const Matrix& a)
    : cols_(a.cols()), reduced_(a), transform_(a.rows(), a.rows()) {
    const std::size_t rows = a.rows();
    for (std::size_t r = 0; r < rows; ++r) transform_.set(r, r);

    for (std::size_t c = 0; c < cols_ && rank_ < rows; ++c) {
        std::size_t pivot = rank_;
        while (pivot < rows && !reduced_.get(pivot, c)) ++pivot;
        if (pivot == rows) continue;
        std::swap(reduced_.row(pivot), reduced_.row(rank_));
        std::swap(transform_.row(pivot), transform_.row(rank_));
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != rank_ && reduced_.get(r, c)) {
                reduced_.row(r) ^= reduced_.row(rank_);
                transform_.row(r) ^= transform_.row(rank_);
            }
        }
        pivot_col_.push_back(c);
        ++rank_;
    }
}

std::optional<BitVector> UnitSolver::solve(const BitVector& b) const {
    if (b.size() != transform_.rows()) throw std::invalid_argument("GF(2) size mismatch");
    BitVector x(cols_);
    for (std::size_t r = 0; r < transform_.rows(); ++r) {
        const bool y = transform_.row(r).dot(b);
        if (r < rank_) {
            x.set(pivot_col_[r], y);
        } else if (y) {
            return std::nullopt;
        }
    }
    return x;
}

std::optional<BitVector> UnitSolver::solve_unit(std::size_t k) const {
    BitVector x(cols_);
    for (std::size_t r = 0; r < transform_.rows(); ++r) {
        const bool y = transform_.get(r, k);
        if (r < rank_) {
            x.set(pivot_col_[r], y);
        } else if (y) {
            return std::nullopt;
        }
    }
    return x;
}

}  // namespace owqs::gf2
