// Copyright 2026 The lstrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lstrace/gate_dag.hpp"

namespace lstrace {

enum class GateKind { CX, CZ };

inline const char* to_string(GateKind k) { return k == GateKind::CX ? "cx" : "cz"; }

/// One two-qubit gate; qubit_a is the control for CX.
struct GateOp {
    GateKind kind = GateKind::CX;
    int qubit_a = 0;
    int qubit_b = 0;
    int source_pos = 0;  // ordinal among kept two-qubit gates

    bool operator==(const GateOp&) const = default;
};

/// Two-qubit gate list over a flat logical qubit index space.
struct LogicalCircuit {
    int n_qubits = 0;
    std::vector<GateOp> gates;
};

/// Parse failure; what() carries the line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

struct Statement {
    std::string text;
    int line;
};

// Splits source into ';'-terminated statements, dropping // comments.
inline std::vector<Statement> split_statements(std::string_view src) {
    std::vector<Statement> out;
    std::string cur;
    int line = 1, stmt_line = 1;
    bool in_comment = false;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            in_comment = false;
            c = ' ';
        }
        if (in_comment) continue;
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            in_comment = true;
            ++i;
            continue;
        }
        if (c == ';') {
            out.push_back({cur, stmt_line});
            cur.clear();
            continue;
        }
        if (cur.empty() && std::isspace(static_cast<unsigned char>(c))) {
            stmt_line = line;
            continue;
        }
        if (cur.empty()) stmt_line = line;
        cur.push_back(c);
    }
    std::string rest = cur;
    rest.erase(std::remove_if(rest.begin(), rest.end(),
                              [](unsigned char ch) { return std::isspace(ch); }),
               rest.end());
    if (!rest.empty()) throw ParseError(stmt_line, "unterminated statement: '" + cur + "'");
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Leading identifier of a statement ("cx", "qreg", ...).
inline std::string_view head_ident(std::string_view s) {
    std::size_t n = 0;
    while (n < s.size() && is_ident_char(s[n])) ++n;
    return s.substr(0, n);
}

// Parses "name[index]"; returns (name, index).
inline std::pair<std::string, int> parse_operand(std::string_view tok, int line) {
    tok = trim(tok);
    auto lb = tok.find('[');
    auto rb = tok.find(']');
    if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb ||
        rb + 1 != tok.size() || lb == 0)
        throw ParseError(line, "expected indexed qubit operand, got '" + std::string(tok) + "'");
    std::string name(trim(tok.substr(0, lb)));
    std::string idx(trim(tok.substr(lb + 1, rb - lb - 1)));
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        throw ParseError(line, "invalid qubit index '" + idx + "'");
    return {name, std::stoi(idx)};
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

}  // namespace detail

/// Parses the OpenQASM 2 subset: qreg declarations, cx/cz, single-qubit
/// gates with optional parameters (discarded), barrier (discarded),
/// include "qelib1.inc" and the OPENQASM header (ignored). Multiple qregs
/// are flattened into one index space in declaration order.
inline LogicalCircuit parse_qasm(std::string_view src) {
    LogicalCircuit circuit;
    struct Reg {
        int base;
        int size;
    };
    std::vector<std::pair<std::string, Reg>> regs;  // declaration order
    auto find_reg = [&](const std::string& name) -> const Reg* {
        for (auto& [n, r] : regs)
            if (n == name) return &r;
        return nullptr;
    };

    auto resolve = [&](std::string_view tok, int line) {
        auto [name, idx] = detail::parse_operand(tok, line);
        const Reg* r = find_reg(name);
        if (!r) throw ParseError(line, "unknown register '" + name + "'");
        if (idx >= r->size)
            throw ParseError(line, "qubit index out of range: " + name + "[" +
                                       std::to_string(idx) + "] (size " +
                                       std::to_string(r->size) + ")");
        return r->base + idx;
    };

    for (const auto& stmt : detail::split_statements(src)) {
        std::string_view s = detail::trim(stmt.text);
        if (s.empty()) continue;
        const int line = stmt.line;
        std::string_view head = detail::head_ident(s);

        if (head == "OPENQASM" || head == "include") continue;
        if (head == "barrier") continue;
        if (head == "qreg") {
            auto rest = detail::trim(s.substr(head.size()));
            auto [name, size] = detail::parse_operand(rest, line);
            if (size < 1) throw ParseError(line, "register '" + name + "' has size 0");
            if (find_reg(name)) throw ParseError(line, "duplicate register name '" + name + "'");
            regs.push_back({name, {circuit.n_qubits, size}});
            circuit.n_qubits += size;
            continue;
        }
        if (head == "creg" || head == "measure" || head == "reset" || head == "if" ||
            head == "gate" || head == "opaque")
            throw ParseError(line, "unsupported statement '" + std::string(head) + "'");
        if (head.empty()) throw ParseError(line, "syntax error near '" + std::string(s) + "'");

        // gate application: id[(params)] operand {, operand}
        std::string_view rest = s.substr(head.size());
        rest = detail::trim(rest);
        if (!rest.empty() && rest.front() == '(') {
            // skip parameter list
            int depth = 0;
            std::size_t i = 0;
            for (; i < rest.size(); ++i) {
                if (rest[i] == '(') ++depth;
                if (rest[i] == ')' && --depth == 0) break;
            }
            if (depth != 0) throw ParseError(line, "unbalanced parentheses");
            rest = detail::trim(rest.substr(i + 1));
        }
        if (rest.empty()) throw ParseError(line, "gate '" + std::string(head) + "' has no operands");
        auto operands = detail::split_commas(rest);

        if (head == "cx" || head == "cz") {
            if (operands.size() != 2)
                throw ParseError(line, "'" + std::string(head) + "' expects 2 qubits, got " +
                                           std::to_string(operands.size()));
            int a = resolve(operands[0], line);
            int b = resolve(operands[1], line);
            if (a == b) throw ParseError(line, "two-qubit gate on a single qubit q" + std::to_string(a));
            GateOp op;
            op.kind = head == "cx" ? GateKind::CX : GateKind::CZ;
            op.qubit_a = a;
            op.qubit_b = b;
            op.source_pos = static_cast<int>(circuit.gates.size());
            circuit.gates.push_back(op);
            continue;
        }
        if (operands.size() != 1)
            throw ParseError(line, "unsupported " + std::to_string(operands.size()) +
                                       "-qubit gate '" + std::string(head) + "'");
        resolve(operands[0], line);  // validate, then discard
    }
    if (regs.empty()) throw ParseError(1, "no qreg declared");
    return circuit;
}

/// Canonical serialization: one unified register named q.
inline std::string serialize_qasm(const LogicalCircuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.n_qubits << "];\n";
    for (const auto& g : c.gates)
        out << to_string(g.kind) << " q[" << g.qubit_a << "],q[" << g.qubit_b << "];\n";
    return out.str();
}

/// Parallel layers under the ASAP rule: a gate lands one layer after the
/// latest earlier gate sharing a qubit.
struct LayeredSchedule {
    std::vector<std::vector<int>> layers;  // gate ids per layer
};

inline LayeredSchedule layered_schedule(const LogicalCircuit& c) {
    LayeredSchedule sched;
    std::vector<int> qubit_layer(c.n_qubits, -1);
    for (const auto& g : c.gates) {
        int layer = 1 + std::max(qubit_layer[g.qubit_a], qubit_layer[g.qubit_b]);
        if (static_cast<int>(sched.layers.size()) <= layer) sched.layers.resize(layer + 1);
        sched.layers[layer].push_back(g.source_pos);
        qubit_layer[g.qubit_a] = layer;
        qubit_layer[g.qubit_b] = layer;
    }
    return sched;
}

/// Ground-truth dependency DAG: edge g -> h iff g and h share a qubit and no
/// gate in between touches it. Nodes carry (0, qubit) pseudo-tiles.
inline GateDag circuit_to_dag(const LogicalCircuit& c) {
    GateDag dag;
    LayeredSchedule sched = layered_schedule(c);
    std::vector<int> gate_layer(c.gates.size(), 0);
    for (std::size_t l = 0; l < sched.layers.size(); ++l)
        for (int g : sched.layers[l]) gate_layer[g] = static_cast<int>(l);

    std::vector<int> last_gate(c.n_qubits, -1);
    for (const auto& g : c.gates) {
        GateNode node;
        node.timestep = gate_layer[g.source_pos];
        node.a = {0, g.qubit_a};
        node.b = {0, g.qubit_b};
        int id = dag.add_node(node);
        for (int q : {g.qubit_a, g.qubit_b}) {
            if (last_gate[q] >= 0) dag.add_edge(last_gate[q], id);
            last_gate[q] = id;
        }
    }
    dag.finalize();
    return dag;
}

/// circuit_to_dag with qubits placed on layout tiles; used as the embedding
/// ground truth for reconstructed DAGs.
inline GateDag placed_circuit_dag(const LogicalCircuit& c, const Layout& layout) {
    GateDag dag = circuit_to_dag(c);
    for (auto& n : dag.nodes) {
        TileCoord ta = layout.qubit_tile(n.a.col);
        TileCoord tb = layout.qubit_tile(n.b.col);
        n.a = std::min(ta, tb);
        n.b = std::max(ta, tb);
    }
    return dag;
}

}  // namespace lstrace
