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

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lstrace/qasm.hpp"

namespace lstrace {

/// One subroutine inside a synthesized program: its contiguous global qubit
/// range [base, base+count) and the local->global permutation applied.
struct Constituent {
    std::string name;
    int base = 0;
    int count = 0;
    std::vector<int> perm;  // local qubit l -> base + perm[l]
    std::uint64_t seed = 0;
};

struct CompositionRecord {
    int total_qubits = 0;
    std::vector<Constituent> constituents;
};

/// A named QASM source to merge.
struct SubroutineSource {
    std::string name;
    std::string qasm;
};

namespace detail {

// Fisher-Yates with explicit modulo sampling; std::shuffle is not
// reproducible across standard library implementations.
inline std::vector<int> seeded_permutation(int n, std::uint64_t seed) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = p.size(); i > 1; --i)
        std::swap(p[i - 1], p[rng() % i]);
    return p;
}

}  // namespace detail

/// Merges subroutines into one program over a unified register: qubit
/// indices are globally renumbered, each constituent's local indices are
/// randomly permuted, and gate bodies are concatenated in input order.
inline std::pair<std::string, CompositionRecord> synthesize(
    const std::vector<SubroutineSource>& sources, std::uint64_t seed) {
    CompositionRecord record;
    std::vector<LogicalCircuit> circuits;
    circuits.reserve(sources.size());
    std::mt19937_64 master(seed);
    for (const auto& src : sources) {
        LogicalCircuit c = parse_qasm(src.qasm);
        Constituent k;
        k.name = src.name;
        k.base = record.total_qubits;
        k.count = c.n_qubits;
        k.seed = master();
        k.perm = detail::seeded_permutation(c.n_qubits, k.seed);
        record.total_qubits += c.n_qubits;
        record.constituents.push_back(std::move(k));
        circuits.push_back(std::move(c));
    }

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << record.total_qubits << "];\n";
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        const Constituent& k = record.constituents[i];
        out << "// " << k.name << " -> q[" << k.base << ".." << (k.base + k.count - 1) << "]\n";
        for (const auto& g : circuits[i].gates)
            out << to_string(g.kind) << " q[" << (k.base + k.perm[g.qubit_a]) << "],q["
                << (k.base + k.perm[g.qubit_b]) << "];\n";
    }
    return {out.str(), std::move(record)};
}

/// `count` independently synthesized variants with derived seeds
/// base_seed, base_seed+1, ...
inline std::vector<std::pair<std::string, CompositionRecord>> perturbations(
    const std::vector<SubroutineSource>& sources, std::uint64_t base_seed, int count = 30) {
    std::vector<std::pair<std::string, CompositionRecord>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(synthesize(sources, base_seed + i));
    return out;
}

}  // namespace lstrace
