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

// Line-oriented `.owp` reader and writer.
//
//   qubits 1..4            # or a comma list; ranges and lists may be mixed
//   inputs 1,2
//   outputs 1,4
//   E 1 3
//   M 3 -pi/4 s[2] t[1+2]
//   X 4 s[3]

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "owqs/pattern.hpp"

namespace owqs {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("parse", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr long long kMaxPiDenominator = 64;

double pi_multiple(long long numerator, long long denominator) {
    return static_cast<double>(numerator) * std::numbers::pi / static_cast<double>(denominator);
}

class LineCursor {
   public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column(), message); }
    [[noreturn]] void fail_at(std::size_t col, const std::string& message) const {
        throw ParseError(line_, col, message);
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string_view word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::uint32_t number() {
        std::size_t start = pos_;
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc{}) fail("expected a qubit number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (value == 0) fail_at(start + 1, "qubit numbers start at 1");
        return value;
    }

    void set_pos(std::size_t p) { pos_ = p; }
    std::size_t pos() const { return pos_; }

   private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct Reader {
    Pattern pattern;
    bool have_qubits = false;
    bool have_inputs = false;
    bool have_outputs = false;

    QubitId qubit(LineCursor& cur) {
        cur.skip_ws();
        std::size_t col = cur.column();
        QubitId q{cur.number()};
        if (!have_qubits) cur.fail_at(col, "qubit used before the 'qubits' declaration");
        if (!pattern.has_qubit(q)) cur.fail_at(col, "undeclared qubit " + std::to_string(to_int(q)));
        return q;
    }

    std::vector<QubitId> id_list(LineCursor& cur, bool declaring) {
        std::vector<QubitId> ids;
        std::set<QubitId> seen;
        if (cur.at_end()) return ids;
        for (;;) {
            cur.skip_ws();
            std::size_t col = cur.column();
            std::uint32_t first = cur.number();
            std::uint32_t last = first;
            if (cur.accept('.')) {
                cur.expect('.');
                last = cur.number();
                if (last < first) cur.fail_at(col, "empty range");
            }
            for (std::uint64_t v = first; v <= last; ++v) {
                QubitId q{static_cast<std::uint32_t>(v)};
                if (!seen.insert(q).second) {
                    cur.fail_at(col, "duplicate qubit declaration " + std::to_string(v));
                }
                if (!declaring && !pattern.has_qubit(q)) {
                    cur.fail_at(col, "undeclared qubit " + std::to_string(v));
                }
                ids.push_back(q);
            }
            cur.skip_ws();
            if (cur.at_end()) break;
            cur.expect(',');
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    Signal signal_body(LineCursor& cur) {
        Signal s;
        cur.expect('[');
        cur.skip_ws();
        if (cur.accept(']')) return s;
        for (;;) {
            s.toggle(qubit(cur));
            cur.skip_ws();
            if (cur.accept(']')) return s;
            cur.expect('+');
        }
    }

    void directive(std::string_view keyword, LineCursor& cur) {
        if (keyword == "qubits") {
            if (have_qubits) cur.fail("duplicate 'qubits' declaration");
            pattern.qubits = id_list(cur, true);
            have_qubits = true;
            return;
        }
        if (!have_qubits) cur.fail(std::string(keyword) + " declared before 'qubits'");
        if (keyword == "inputs") {
            if (have_inputs) cur.fail("duplicate 'inputs' declaration");
            pattern.inputs = id_list(cur, false);
            have_inputs = true;
        } else {
            if (have_outputs) cur.fail("duplicate 'outputs' declaration");
            pattern.outputs = id_list(cur, false);
            have_outputs = true;
        }
    }

    void action(std::string_view keyword, LineCursor& cur) {
        if (keyword == "N") {
            pattern.actions.emplace_back(Prepare{qubit(cur)});
        } else if (keyword == "E") {
            std::size_t col = cur.column() + 1;
            QubitId u = qubit(cur);
            QubitId v = qubit(cur);
            if (u == v) cur.fail_at(col, "a qubit cannot be entangled with itself");
            pattern.actions.emplace_back(Entangle{u, v});
        } else if (keyword == "M") {
            Measure m;
            m.qubit = qubit(cur);
            cur.skip_ws();
            std::size_t col = cur.column();
            std::string_view token = cur.word();
            if (token.empty()) cur.fail_at(col, "missing measurement angle");
            std::optional<double> angle = parse_angle(token);
            if (!angle) cur.fail_at(col, "malformed angle '" + std::string(token) + "'");
            m.angle = *angle;
            bool have_s = false;
            bool have_t = false;
            while (!cur.at_end()) {
                col = cur.column();
                if (cur.accept('s')) {
                    if (have_s) cur.fail_at(col, "duplicate s-signal");
                    m.s = signal_body(cur);
                    have_s = true;
                } else if (cur.accept('t')) {
                    if (have_t) cur.fail_at(col, "duplicate t-signal");
                    m.t = signal_body(cur);
                    have_t = true;
                } else {
                    cur.fail("expected s[...] or t[...]");
                }
            }
            pattern.actions.emplace_back(std::move(m));
        } else {
            QubitId q = qubit(cur);
            Signal s;
            if (!cur.at_end()) {
                if (!cur.accept('s')) cur.fail("expected s[...]");
                s = signal_body(cur);
            }
            if (keyword == "X") {
                pattern.actions.emplace_back(CorrectX{q, std::move(s)});
            } else {
                pattern.actions.emplace_back(CorrectZ{q, std::move(s)});
            }
        }
    }
};

std::string id_list_text(const std::vector<QubitId>& ids) {
    if (ids.empty()) return {};
    bool contiguous = ids.size() >= 2;
    for (std::size_t i = 1; i < ids.size() && contiguous; ++i) {
        contiguous = to_int(ids[i]) == to_int(ids[i - 1]) + 1;
    }
    if (contiguous) return std::to_string(to_int(ids.front())) + ".." + std::to_string(to_int(ids.back()));
    std::string out;
    for (QubitId q : ids) {
        if (!out.empty()) out += ',';
        out += std::to_string(to_int(q));
    }
    return out;
}

}  // namespace

std::optional<double> parse_angle(std::string_view token) {
    if (token.empty()) return std::nullopt;
    std::size_t pi_at = token.find("pi");
    if (pi_at == std::string_view::npos) {
        double value = 0.0;
        const char* begin = token.data();
        if (*begin == '+') ++begin;
        auto [ptr, ec] = std::from_chars(begin, token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
        return value;
    }

    std::string_view head = token.substr(0, pi_at);
    std::string_view tail = token.substr(pi_at + 2);
    long long sign = 1;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
        if (head.front() == '-') sign = -1;
        head.remove_prefix(1);
    }
    long long numerator = 1;
    if (!head.empty()) {
        if (head.back() == '*') head.remove_suffix(1);
        auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), numerator);
        if (ec != std::errc{} || ptr != head.data() + head.size()) return std::nullopt;
    }
    long long denominator = 1;
    if (!tail.empty()) {
        if (tail.front() != '/') return std::nullopt;
        tail.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), denominator);
        if (ec != std::errc{} || ptr != tail.data() + tail.size() || denominator <= 0) return std::nullopt;
    }
    return pi_multiple(sign * numerator, denominator);
}

std::string format_angle(double radians) {
    if (radians == 0.0) return "0";
    for (long long d = 1; d <= kMaxPiDenominator; ++d) {
        double k = std::nearbyint(radians * static_cast<double>(d) / std::numbers::pi);
        if (k == 0.0 || std::abs(k) > 1e6) continue;
        auto numerator = static_cast<long long>(k);
        if (pi_multiple(numerator, d) != radians) continue;
        std::string out;
        if (numerator == -1) {
            out = "-";
        } else if (numerator != 1) {
            out = std::to_string(numerator);
        }
        out += "pi";
        if (d != 1) out += "/" + std::to_string(d);
        return out;
    }
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), radians);
    return std::string(buffer, ptr);
}

Pattern parse_pattern(std::string_view text) {
    Reader reader;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        LineCursor cur(line, line_no);
        if (cur.at_end()) continue;
        std::size_t col = cur.column();
        std::string_view keyword = cur.word();
        if (keyword == "qubits" || keyword == "inputs" || keyword == "outputs") {
            reader.directive(keyword, cur);
        } else if (keyword == "N" || keyword == "E" || keyword == "M" || keyword == "X" || keyword == "Z") {
            reader.action(keyword, cur);
            if (!cur.at_end()) cur.fail("unexpected trailing text");
        } else {
            cur.fail_at(col, "unknown keyword '" + std::string(keyword) + "'");
        }
    }
    if (!reader.have_qubits) throw ParseError(line_no + 1, 1, "missing 'qubits' declaration");
    return std::move(reader.pattern);
}

Pattern load_pattern(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open pattern file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pattern(buffer.str());
}

std::string serialize_pattern(const Pattern& p) {
    std::string out;
    auto line = [&out](std::string_view keyword, const std::vector<QubitId>& ids) {
        out += keyword;
        std::string list = id_list_text(ids);
        if (!list.empty()) out += " " + list;
        out += '\n';
    };
    line("qubits", p.qubits);
    line("inputs", p.inputs);
    line("outputs", p.outputs);
    for (const Action& a : p.actions) out += describe(a) + '\n';
    return out;
}

}  // namespace owqs
