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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lstrace/enumerate.hpp"

namespace lstrace {

/// Reference enumeration for components of at most 16 tiles: exhaustive
/// search over all endpoint pairings times all simple paths per pair,
/// filtered for disjointness and full coverage. Deliberately naive and
/// independent of enumerate_solutions; used to validate it in tests.
inline EnumerationResult brute_force_oracle(const Component& comp) {
    const auto& tiles = comp.tiles;
    const int n = static_cast<int>(tiles.size());
    if (n > 16) throw std::invalid_argument("brute_force_oracle handles at most 16 tiles");

    auto local = [&](TileCoord t) {
        for (int i = 0; i < n; ++i)
            if (tiles[i] == t) return i;
        return -1;
    };
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (auto d : kNeighborDeltas) {
            int j = local({tiles[i].row + d.row, tiles[i].col + d.col});
            if (j >= 0) adj[i].push_back(j);
        }
    std::vector<bool> is_ep(n, false);
    std::vector<int> eps;
    for (auto e : comp.endpoints) {
        int i = local(e);
        is_ep[i] = true;
        eps.push_back(i);
    }
    std::sort(eps.begin(), eps.end());

    EnumerationResult out;
    if (eps.empty()) return out;
    if (eps.size() % 2 != 0) throw OddEndpointError(static_cast<int>(eps.size()));

    std::uint32_t full_mask = n >= 32 ? ~0u : ((1u << n) - 1);

    // All simple paths between two endpoints through non-endpoint tiles.
    auto simple_paths = [&](int a, int b) {
        std::vector<std::pair<std::vector<int>, std::uint32_t>> found;
        std::vector<int> path{a};
        std::uint32_t visited = 1u << a;
        auto rec = [&](auto&& self, int u) -> void {
            for (int v : adj[u]) {
                if (v == b) {
                    auto p = path;
                    p.push_back(b);
                    found.push_back({p, visited | (1u << b)});
                    continue;
                }
                if (is_ep[v] || (visited & (1u << v))) continue;
                visited |= 1u << v;
                path.push_back(v);
                self(self, v);
                path.pop_back();
                visited &= ~(1u << v);
            }
        };
        rec(rec, a);
        return found;
    };

    std::vector<PathSolution> solutions;

    // Enumerate pairings recursively, then take the product of the per-pair
    // path lists, keeping disjoint combinations covering every tile.
    std::vector<std::pair<int, int>> pairing;
    std::vector<bool> taken(eps.size(), false);
    auto pair_rec = [&](auto&& self, std::size_t done_pairs) -> void {
        if (done_pairs == eps.size() / 2) {
            std::vector<std::vector<std::pair<std::vector<int>, std::uint32_t>>> options;
            for (auto [a, b] : pairing) options.push_back(simple_paths(a, b));
            std::vector<std::vector<int>> chosen;
            auto combo = [&](auto&& self2, std::size_t k, std::uint32_t mask) -> void {
                if (k == options.size()) {
                    if (mask == full_mask) {
                        PathSolution sol;
                        for (const auto& p : chosen) {
                            std::vector<TileCoord> path;
                            for (int i : p) path.push_back(tiles[i]);
                            sol.paths.push_back(detail::canonical_path(std::move(path)));
                        }
                        std::sort(sol.paths.begin(), sol.paths.end());
                        solutions.push_back(std::move(sol));
                    }
                    return;
                }
                for (const auto& [p, pmask] : options[k]) {
                    if ((mask & pmask) != 0) continue;
                    chosen.push_back(p);
                    self2(self2, k + 1, mask | pmask);
                    chosen.pop_back();
                }
            };
            combo(combo, 0, 0);
            return;
        }
        std::size_t first = 0;
        while (taken[first]) ++first;
        taken[first] = true;
        for (std::size_t j = first + 1; j < eps.size(); ++j) {
            if (taken[j]) continue;
            taken[j] = true;
            pairing.push_back({eps[first], eps[j]});
            self(self, done_pairs + 1);
            pairing.pop_back();
            taken[j] = false;
        }
        taken[first] = false;
    };
    pair_rec(pair_rec, 0);

    std::sort(solutions.begin(), solutions.end());
    out.solutions = std::move(solutions);
    out.stats.complete = true;
    return out;
}

}  // namespace lstrace
