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
#include <vector>

#include "lstrace/enumerate.hpp"
#include "lstrace/match.hpp"
#include "lstrace/recover.hpp"

namespace lstrace {

/// Enumeration results for one recovery, indexed [frame][component].
/// KnownPath components keep an empty placeholder entry.
using SolutionTable = std::vector<std::vector<EnumerationResult>>;

struct ReconstructionResult {
    GateDag dag;
    // Frames holding an ambiguous component with zero valid solutions; they
    // contribute no nodes and mark the run as failed for metrics purposes.
    std::vector<int> unresolvable_frames;
};

/// Builds the ambiguity-augmented gate DAG. Every known path becomes one
/// node; every path of every solution of an ambiguous component becomes one
/// node tagged with its alternative. Dependency edges come from per-tile
/// histories: a node depends on the last nodes that touched either of its
/// endpoint tiles in earlier frames.
inline ReconstructionResult reconstruct_dag(const RecoveryResult& recovery,
                                            const SolutionTable& solutions) {
    ReconstructionResult out;
    GateDag& dag = out.dag;
    const int n_tiles = recovery.rows * recovery.cols;
    const auto flat = [&](TileCoord t) { return t.row * recovery.cols + t.col; };

    std::vector<std::vector<int>> last(n_tiles);

    for (std::size_t f = 0; f < recovery.frames.size(); ++f) {
        const RecoveredFrame& frame = recovery.frames[f];

        bool unresolvable = false;
        for (std::size_t ci = 0; ci < frame.components.size(); ++ci)
            if (frame.components[ci].status == Component::Status::Ambiguous &&
                solutions[f][ci].solutions.empty())
                unresolvable = true;
        if (unresolvable) {
            out.unresolvable_frames.push_back(static_cast<int>(f));
            continue;
        }

        struct Touch {
            int node;
            int component;
        };
        std::vector<std::vector<Touch>> touched(n_tiles);

        auto add_gate = [&](TileCoord a, TileCoord b, std::optional<AltGroup> alt, int ci) {
            GateNode node;
            node.timestep = static_cast<int>(f);
            node.a = a;
            node.b = b;
            node.alt_group = alt;
            node.is_ambiguous = alt.has_value();
            int id = dag.add_node(node);
            for (TileCoord t : {a, b}) {
                for (int h : last[flat(t)]) dag.add_edge(h, id);
                touched[flat(t)].push_back({id, ci});
            }
        };

        for (std::size_t ci = 0; ci < frame.components.size(); ++ci) {
            const Component& comp = frame.components[ci];
            if (comp.status == Component::Status::KnownPath) {
                for (const auto& p : comp.paths)
                    add_gate(p.front(), p.back(), std::nullopt, static_cast<int>(ci));
            } else {
                const auto& res = solutions[f][ci];
                for (std::size_t si = 0; si < res.solutions.size(); ++si)
                    for (const auto& p : res.solutions[si].paths)
                        add_gate(p.front(), p.back(),
                                 AltGroup{static_cast<int>(f), static_cast<int>(ci),
                                          static_cast<int>(si)},
                                 static_cast<int>(ci));
            }
        }

        // History update. A touched tile replaces its history only when every
        // alternative of the component covering it touched the tile; other-
        // wise the previous history is retained alongside the new nodes.
        for (int t = 0; t < n_tiles; ++t) {
            if (touched[t].empty()) continue;
            const Component& comp = frame.components[touched[t].front().component];
            bool universal = true;
            if (comp.status == Component::Status::Ambiguous) {
                const auto& res = solutions[f][touched[t].front().component];
                TileCoord tc{t / recovery.cols, t % recovery.cols};
                for (const auto& sol : res.solutions) {
                    bool hit = false;
                    for (const auto& p : sol.paths)
                        if (p.front() == tc || p.back() == tc) { hit = true; break; }
                    if (!hit) { universal = false; break; }
                }
            }
            std::vector<int> nodes;
            nodes.reserve(touched[t].size());
            for (auto& tn : touched[t]) nodes.push_back(tn.node);
            if (universal)
                last[t] = std::move(nodes);
            else
                last[t].insert(last[t].end(), nodes.begin(), nodes.end());
        }
    }
    dag.finalize();
    return out;
}

/// True iff an injective structure-preserving map sends every truth node to
/// a reconstructed node with the same endpoint tile pair and every truth
/// edge to a reconstructed edge. `truth` must already be placed on tiles.
inline bool embed_check(const GateDag& truth, const GateDag& reconstructed) {
    MatchQuery q;
    q.pattern = &truth;
    q.target = &reconstructed;
    q.mode = MatchMode::FirstMatch;
    q.node_compat = [](const GateNode& p, const GateNode& t) {
        return p.a == t.a && p.b == t.b;
    };
    return find_subgraph(q).status == MatchStatus::Found;
}

}  // namespace lstrace
