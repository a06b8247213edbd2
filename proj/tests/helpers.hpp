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

#include <random>
#include <string>

#include "lstrace/io_util.hpp"
#include "lstrace/lstrace.hpp"

namespace testutil {

// Tests run with the repository root as working directory (set by CTest).
inline std::string corpus(const std::string& name) {
    return lstrace::read_file("benchmarks/subroutines/" + name + ".qasm");
}

inline lstrace::LogicalCircuit random_circuit(std::mt19937_64& rng, int n_qubits, int n_gates) {
    lstrace::LogicalCircuit c;
    c.n_qubits = n_qubits;
    for (int i = 0; i < n_gates; ++i) {
        int a = static_cast<int>(rng() % n_qubits);
        int b = a;
        while (b == a) b = static_cast<int>(rng() % n_qubits);
        lstrace::GateOp g;
        g.kind = rng() % 2 ? lstrace::GateKind::CX : lstrace::GateKind::CZ;
        g.qubit_a = a;
        g.qubit_b = b;
        g.source_pos = i;
        c.gates.push_back(g);
    }
    return c;
}

inline const std::vector<lstrace::LayoutKind> kAllLayouts = {
    lstrace::LayoutKind::SquareSparse, lstrace::LayoutKind::Compact,
    lstrace::LayoutKind::Intermediate};

// Builds a single-frame L1 trace from coordinate lists, for hand-made cases.
inline lstrace::Trace l1_frame(int rows, int cols,
                               const std::vector<lstrace::TileCoord>& active) {
    lstrace::Trace t;
    t.level = lstrace::TraceLevel::L1;
    t.rows = rows;
    t.cols = cols;
    auto& f = t.add_frame();
    for (auto a : active) f[t.flat(a)] = 1;
    return t;
}

inline lstrace::Component component_of(const std::vector<lstrace::TileCoord>& tiles,
                                       const std::vector<lstrace::TileCoord>& endpoints) {
    lstrace::Component c;
    c.tiles = tiles;
    std::sort(c.tiles.begin(), c.tiles.end());
    c.endpoints = endpoints;
    std::sort(c.endpoints.begin(), c.endpoints.end());
    c.status = lstrace::Component::Status::Ambiguous;
    return c;
}

}  // namespace testutil
