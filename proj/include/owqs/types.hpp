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

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace owqs {

/// Qubit label inside a pattern. Labels are positive integers but carry no
/// arithmetic meaning, so they are kept distinct from positions and indices.
enum class QubitId : std::uint32_t {};

constexpr std::uint32_t to_int(QubitId q) noexcept { return static_cast<std::uint32_t>(q); }

namespace literals {
constexpr QubitId operator""_q(unsigned long long v) noexcept {
    return QubitId{static_cast<std::uint32_t>(v)};
}
}  // namespace literals

/// Undirected qubit pair, normalized so that `a < b`.
struct Edge {
    QubitId a{};
    QubitId b{};

    Edge() = default;
    Edge(QubitId u, QubitId v) : a(u < v ? u : v), b(u < v ? v : u) {}

    bool touches(QubitId q) const noexcept { return a == q || b == q; }
    QubitId other(QubitId q) const noexcept { return a == q ? b : a; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Base of every error the library throws. `kind()` is a stable short tag
/// used for machine-readable error reports.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

}  // namespace owqs

template <>
struct std::hash<owqs::Edge> {
    std::size_t operator()(const owqs::Edge& e) const noexcept {
        return (static_cast<std::size_t>(owqs::to_int(e.a)) << 32) ^ owqs::to_int(e.b);
    }
};
