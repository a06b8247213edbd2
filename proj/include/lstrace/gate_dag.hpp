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
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lstrace/layout.hpp"

namespace lstrace {

/// Identifies which enumerated alternative of an ambiguous trace entry
/// produced a gate node.
struct AltGroup {
    int frame = 0;
    int component = 0;
    int solution = 0;
    auto operator<=>(const AltGroup&) const = default;
};

/// One two-qubit gate event. Endpoints are an unordered tile pair; control
/// vs target is deliberately not represented (it is unobservable at L1).
/// DAGs derived straight from a circuit use (0, qubit_index) pseudo-tiles.
struct GateNode {
    int id = 0;
    int timestep = 0;
    TileCoord a;  // canonical: a <= b
    TileCoord b;
    std::optional<AltGroup> alt_group;
    bool is_ambiguous = false;

    std::pair<TileCoord, TileCoord> endpoints() const { return {a, b}; }
};

/// Dependency DAG over two-qubit gate events. Edges run from earlier to
/// strictly later timesteps.
struct GateDag {
    std::vector<GateNode> nodes;
    std::vector<std::pair<int, int>> edges;  // (from, to) node ids

    // adjacency, rebuilt by finalize()
    std::vector<std::vector<int>> out_adj;
    std::vector<std::vector<int>> in_adj;

    int n_nodes() const { return static_cast<int>(nodes.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    int add_node(GateNode n) {
        n.id = n_nodes();
        if (n.b < n.a) std::swap(n.a, n.b);
        nodes.push_back(n);
        return n.id;
    }

    void add_edge(int from, int to) { edges.emplace_back(from, to); }

    void finalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        out_adj.assign(nodes.size(), {});
        in_adj.assign(nodes.size(), {});
        for (auto [u, v] : edges) {
            out_adj[u].push_back(v);
            in_adj[v].push_back(u);
        }
    }

    bool has_edge(int from, int to) const {
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
    }

    /// Topological check; any DAG built from timestep-ordered inserts passes.
    bool is_acyclic() const {
        std::vector<int> indeg(nodes.size(), 0);
        for (auto& [u, v] : edges) {
            (void)u;
            ++indeg[v];
        }
        std::vector<int> stack;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (indeg[i] == 0) stack.push_back(static_cast<int>(i));
        std::size_t seen = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++seen;
            for (int v : out_adj[u])
                if (--indeg[v] == 0) stack.push_back(v);
        }
        return seen == nodes.size();
    }

    /// Longest path length counted in nodes (0 for an empty DAG).
    int longest_path_nodes() const {
        std::vector<int> depth(nodes.size(), 1);
        int best = nodes.empty() ? 0 : 1;
        // nodes are inserted in timestep order, so ids are a topological order
        for (int u = 0; u < n_nodes(); ++u) {
            for (int v : out_adj[u]) {
                depth[v] = std::max(depth[v], depth[u] + 1);
                best = std::max(best, depth[v]);
            }
        }
        return best;
    }
};

}  // namespace lstrace
