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
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lstrace/layout.hpp"
#include "lstrace/qasm.hpp"
#include "lstrace/trace.hpp"

namespace lstrace {

/// Shortest tile path from src to dst whose interior vertices are
/// unblocked routing tiles. A* with Manhattan heuristic and unit costs;
/// ties broken on lower h, then row-major predecessor, then row-major
/// node order. Returns nullopt when no path exists (congestion).
/// Adjacent endpoints yield the two-tile path with empty interior.
inline std::optional<std::vector<TileCoord>> route_gate(const Layout& layout,
                                                        const std::vector<std::uint8_t>& blocked,
                                                        TileCoord src, TileCoord dst) {
    const int n = layout.n_tiles();
    const int s = layout.flat(src), d = layout.flat(dst);
    auto manhattan = [&](int i) {
        TileCoord t = layout.unflat(i);
        return std::abs(t.row - dst.row) + std::abs(t.col - dst.col);
    };

    std::vector<int> g(n, std::numeric_limits<int>::max());
    std::vector<int> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    using Entry = std::tuple<int, int, int, int>;  // f, h, parent, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[s] = 0;
    open.emplace(manhattan(s), manhattan(s), s, s);

    while (!open.empty()) {
        auto [f, h, par, u] = open.top();
        open.pop();
        (void)f;
        (void)h;
        (void)par;
        if (closed[u]) continue;
        closed[u] = 1;
        if (u == d) break;
        TileCoord ut = layout.unflat(u);
        for (auto delta : kNeighborDeltas) {
            TileCoord vt{ut.row + delta.row, ut.col + delta.col};
            if (!layout.in_bounds(vt)) continue;
            int v = layout.flat(vt);
            if (v != d && (layout.is_qubit_tile(vt) || blocked[v])) continue;
            int cand = g[u] + 1;
            if (cand < g[v]) {
                g[v] = cand;
                parent[v] = u;
                open.emplace(cand + manhattan(v), manhattan(v), u, v);
            }
        }
    }
    if (!closed[d]) return std::nullopt;

    std::vector<TileCoord> path;
    for (int v = d; v != s; v = parent[v]) path.push_back(layout.unflat(v));
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    return path;
}

/// One gate routed within a timestep.
struct RoutedGate {
    int gate_id = 0;
    TileCoord control;  // qubit_a tile
    TileCoord target;   // qubit_b tile
    std::vector<TileCoord> path;  // includes both endpoints
};

/// All gates routed in one timestep; paths are pairwise vertex-disjoint.
struct RoutedStep {
    int timestep = 0;
    std::vector<RoutedGate> gates;
};

struct ScheduleOptions {
    // When set, gate attempt order within a timestep is shuffled with this
    // seed instead of ascending gate id.
    std::optional<std::uint64_t> shuffle_seed;
    // Allow gates of later layers to start while earlier-layer gates are
    // still deferred (their per-qubit predecessors must have completed).
    bool interleave_layers = false;
};

struct ScheduleResult {
    std::vector<RoutedStep> steps;
    Trace trace;  // L3 ground truth, one frame per timestep
};

namespace detail {

inline void stamp_gate(std::vector<std::uint8_t>& frame, const Layout& layout,
                       const RoutedGate& rg) {
    const auto& p = rg.path;
    auto& ctrl = frame[layout.flat(rg.control)];
    auto& tgt = frame[layout.flat(rg.target)];
    ctrl |= cell::kRoleControl << 4;
    tgt |= cell::kRoleTarget << 4;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        frame[layout.flat(p[i])] |= cell::edge_toward(p[i], p[i + 1]);
        frame[layout.flat(p[i + 1])] |= cell::edge_toward(p[i + 1], p[i]);
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        frame[layout.flat(p[i])] |= cell::kRoleConnection << 4;
}

}  // namespace detail

/// Routes the circuit layer by layer with a greedy as-many-as-possible
/// policy; gates that fail to route are retried in the next timestep.
/// Emits the L3 ground-truth trace alongside the routed steps.
inline ScheduleResult schedule_and_route(const LogicalCircuit& circuit, const Layout& layout,
                                         const ScheduleOptions& opts = {}) {
    if (circuit.n_qubits > layout.n_qubits())
        throw std::invalid_argument("circuit needs " + std::to_string(circuit.n_qubits) +
                                    " qubits but layout holds " +
                                    std::to_string(layout.n_qubits()));
    ScheduleResult result;
    result.trace.level = TraceLevel::L3;
    result.trace.rows = layout.rows;
    result.trace.cols = layout.cols;

    std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
    auto order_attempts = [&](std::vector<int>& gates) {
        std::sort(gates.begin(), gates.end());
        if (opts.shuffle_seed) {
            // Fisher-Yates with explicit sampling for cross-platform stability.
            for (std::size_t i = gates.size(); i > 1; --i)
                std::swap(gates[i - 1], gates[rng() % i]);
        }
    };

    const LayeredSchedule sched = layered_schedule(circuit);
    const GateDag dag = opts.interleave_layers ? circuit_to_dag(circuit) : GateDag{};

    std::vector<int> pending_preds;
    if (opts.interleave_layers) {
        pending_preds.resize(circuit.gates.size());
        for (std::size_t i = 0; i < circuit.gates.size(); ++i)
            pending_preds[i] = static_cast<int>(dag.in_adj[i].size());
    }

    int timestep = 0;
    std::vector<std::uint8_t> blocked(layout.n_tiles(), 0);

    // Executes one timestep over `ready`: routed gate ids go to `completed`,
    // congested gates stay in `ready` for the next timestep.
    auto run_step = [&](std::vector<int>& ready, std::vector<int>& completed) {
        order_attempts(ready);
        std::fill(blocked.begin(), blocked.end(), 0);
        RoutedStep step;
        step.timestep = timestep;
        auto& frame = result.trace.add_frame();
        std::vector<int> deferred;
        for (int gid : ready) {
            const GateOp& g = circuit.gates[gid];
            TileCoord src = layout.qubit_tile(g.qubit_a);
            TileCoord dst = layout.qubit_tile(g.qubit_b);
            auto path = route_gate(layout, blocked, src, dst);
            if (!path) {
                deferred.push_back(gid);
                continue;
            }
            for (auto t : *path) blocked[layout.flat(t)] = 1;
            RoutedGate rg{gid, src, dst, std::move(*path)};
            detail::stamp_gate(frame, layout, rg);
            step.gates.push_back(std::move(rg));
        }
        if (step.gates.empty())
            throw std::logic_error("gate unroutable on an empty grid; layout is invalid");
        for (const auto& rg : step.gates) completed.push_back(rg.gate_id);
        result.steps.push_back(std::move(step));
        ready = std::move(deferred);
        ++timestep;
    };

    if (!opts.interleave_layers) {
        for (const auto& layer : sched.layers) {
            std::vector<int> ready = layer;
            std::vector<int> done;
            while (!ready.empty()) run_step(ready, done);
        }
    } else {
        std::vector<int> ready;
        for (std::size_t i = 0; i < circuit.gates.size(); ++i)
            if (pending_preds[i] == 0) ready.push_back(static_cast<int>(i));
        while (!ready.empty()) {
            std::vector<int> done;
            run_step(ready, done);
            for (int gid : done)
                for (int succ : dag.out_adj[gid])
                    if (--pending_preds[succ] == 0) ready.push_back(succ);
        }
    }
    return result;
}

}  // namespace lstrace
