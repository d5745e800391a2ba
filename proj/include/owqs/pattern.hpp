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

// Measurement patterns in standard form: data model, `.owp` text format,
// rule checking and structural analysis.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owqs/types.hpp"

namespace owqs {

/// XOR of recorded outcomes. Terms are kept sorted and unique; a term that is
/// added twice cancels, since s_v + s_v = 0 (mod 2).
class Signal {
   public:
    Signal() = default;
    Signal(std::initializer_list<QubitId> terms);
    explicit Signal(const std::vector<QubitId>& terms);

    void toggle(QubitId q);
    bool contains(QubitId q) const;
    bool empty() const noexcept { return terms_.empty(); }
    const std::vector<QubitId>& terms() const noexcept { return terms_; }

    friend bool operator==(const Signal&, const Signal&) = default;

   private:
    std::vector<QubitId> terms_;
};

struct Prepare {
    QubitId qubit{};
    friend bool operator==(const Prepare&, const Prepare&) = default;
};

struct Entangle {
    QubitId u{};
    QubitId v{};
    friend bool operator==(const Entangle&, const Entangle&) = default;
};

struct Measure {
    QubitId qubit{};
    double angle = 0.0;  // radians
    Signal s;            // flips the sign of the angle
    Signal t;            // adds pi to the angle
    friend bool operator==(const Measure&, const Measure&) = default;
};

struct CorrectX {
    QubitId qubit{};
    Signal signal;
    friend bool operator==(const CorrectX&, const CorrectX&) = default;
};

struct CorrectZ {
    QubitId qubit{};
    Signal signal;
    friend bool operator==(const CorrectZ&, const CorrectZ&) = default;
};

using Action = std::variant<Prepare, Entangle, Measure, CorrectX, CorrectZ>;

/// Qubits an action acts on (one, or two for Entangle).
std::vector<QubitId> action_qubits(const Action& a);
/// Qubits whose outcomes an action reads.
std::vector<QubitId> action_dependencies(const Action& a);
std::string describe(const Action& a);

/// A pattern (V, I, O, A). Actions are stored in execution order: the first
/// element runs first.
struct Pattern {
    std::vector<QubitId> qubits;   // sorted, unique
    std::vector<QubitId> inputs;   // sorted, unique
    std::vector<QubitId> outputs;  // sorted, unique
    std::vector<Action> actions;

    bool has_qubit(QubitId q) const;
    bool is_input(QubitId q) const;
    bool is_output(QubitId q) const;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Non-output qubits in the order their Measure actions appear.
std::vector<QubitId> measurement_order(const Pattern& p);
std::size_t entangle_count(const Pattern& p);
/// Copy of `p` with every s/t signal and correction signal removed.
Pattern drop_signals(const Pattern& p);

// ---------------------------------------------------------------------------
// Text format

class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

Pattern parse_pattern(std::string_view text);
Pattern load_pattern(const std::string& path);
std::string serialize_pattern(const Pattern& p);
/// Formats an angle so that parsing it back yields the same double. Exact
/// rational multiples of pi are printed as `3pi/4` and friends.
std::string format_angle(double radians);
/// Parses `pi`, `-pi/4`, `3pi/4` or a decimal literal.
std::optional<double> parse_angle(std::string_view token);

// ---------------------------------------------------------------------------
// Rule checking

enum class Rule { D0, D1, D2, D3, StandardForm, SelfLoop, DuplicateEdge, Membership };
std::string_view rule_name(Rule r);

struct Violation {
    Rule rule;
    std::optional<std::size_t> action_index;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

/// Checks rules D0-D3 plus standard-form ordering. Never throws.
ValidationReport validate(const Pattern& p);

class ValidationError : public Error {
   public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

   private:
    ValidationReport report_;
};

/// Throws ValidationError when `validate(p)` reports anything.
void require_valid(const Pattern& p);

// ---------------------------------------------------------------------------
// Structure

struct EntanglementGraph {
    std::vector<QubitId> vertices;  // sorted
    std::vector<Edge> edges;        // in action order

    std::vector<QubitId> neighbors(QubitId q) const;
    bool has_edge(QubitId u, QubitId v) const;
};

/// One edge per Entangle action. Throws Error("graph") on a repeated pair.
EntanglementGraph entanglement_graph(const Pattern& p);

/// Longest chain of signal dependencies between measurements and
/// corrections. Unconditional corrections are no-ops and do not count.
std::size_t quantum_depth(const Pattern& p);

}  // namespace owqs
