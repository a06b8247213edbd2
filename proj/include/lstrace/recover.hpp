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
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lstrace/trace.hpp"

namespace lstrace {

/// Global set of tiles believed to host logical qubits. Grows monotonically
/// across heuristic passes; under the static-mapping assumption a tile that
/// hosted a qubit at any timestep hosts it at all timesteps.
struct EndpointRegistry {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> mask;  // rows*cols

    bool contains(TileCoord t) const { return mask[t.row * cols + t.col] != 0; }
    void insert(TileCoord t) { mask[t.row * cols + t.col] = 1; }

    std::vector<TileCoord> tiles() const {
        std::vector<TileCoord> out;
        for (int i = 0; i < rows * cols; ++i)
            if (mask[i]) out.push_back({i / cols, i % cols});
        return out;
    }
};

/// Connected active region of one frame, with the endpoints recovered
/// inside it. KnownPath components carry their full path decomposition.
struct Component {
    enum class Status { KnownPath, Ambiguous };

    std::vector<TileCoord> tiles;      // row-major sorted
    std::vector<TileCoord> endpoints;  // row-major sorted
    Status status = Status::Ambiguous;
    std::vector<std::vector<TileCoord>> paths;  // only for KnownPath
};

/// One frame after heuristic recovery: an L3 cell matrix plus the component
/// partition of its active tiles.
struct RecoveredFrame {
    std::vector<std::uint8_t> cells;  // rows*cols L3 codes
    std::vector<Component> components;

    bool ambiguous() const {
        for (const auto& c : components)
            if (c.status == Component::Status::Ambiguous) return true;
        return false;
    }
};

struct RecoveryResult {
    int rows = 0;
    int cols = 0;
    EndpointRegistry registry;
    std::vector<RecoveredFrame> frames;
};

namespace detail {

inline bool frame_active(const std::vector<std::uint8_t>& frame, int cols, TileCoord t) {
    return frame[t.row * cols + t.col] != 0;
}

inline int active_neighbor_count(const std::vector<std::uint8_t>& frame, int rows, int cols,
                                 TileCoord t) {
    int n = 0;
    for (auto d : kNeighborDeltas) {
        TileCoord v{t.row + d.row, t.col + d.col};
        if (v.row < 0 || v.row >= rows || v.col < 0 || v.col >= cols) continue;
        if (frame_active(frame, cols, v)) ++n;
    }
    return n;
}

}  // namespace detail

/// Heuristic 1: an edge between two adjacent tiles is considered active
/// when both tiles are active. Over-approximates by construction.
inline std::vector<std::pair<TileCoord, TileCoord>> h1_active_edges(
    const std::vector<std::uint8_t>& frame, int rows, int cols) {
    std::vector<std::pair<TileCoord, TileCoord>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!detail::frame_active(frame, cols, {r, c})) continue;
            if (c + 1 < cols && detail::frame_active(frame, cols, {r, c + 1}))
                edges.push_back({{r, c}, {r, c + 1}});
            if (r + 1 < rows && detail::frame_active(frame, cols, {r + 1, c}))
                edges.push_back({{r, c}, {r + 1, c}});
        }
    }
    return edges;
}

/// Heuristic 2: active tiles with exactly one active 4-neighbor host
/// logical qubits. Sound but incomplete; degree-0 actives are not reported.
inline std::vector<TileCoord> h2_detect_endpoints(const std::vector<std::uint8_t>& frame,
                                                  int rows, int cols) {
    std::vector<TileCoord> out;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (detail::frame_active(frame, cols, {r, c}) &&
                detail::active_neighbor_count(frame, rows, cols, {r, c}) == 1)
                out.push_back({r, c});
    return out;
}

namespace detail {

// Greedy path decomposition of one component. Pairs off endpoints whose
// pairing and route are forced, in row-major order; anything short of a
// complete forced decomposition leaves the whole component ambiguous.
inline void decompose_component(Component& comp, int rows, int cols) {
    const auto flat = [cols](TileCoord t) { return t.row * cols + t.col; };
    std::vector<std::uint8_t> is_endpoint(rows * cols, 0);
    std::vector<std::uint8_t> wire(rows * cols, 0);  // remaining wire tiles
    for (auto t : comp.endpoints) is_endpoint[flat(t)] = 1;
    for (auto t : comp.tiles)
        if (!is_endpoint[flat(t)]) wire[flat(t)] = 1;

    std::vector<TileCoord> rem = comp.endpoints;
    int wires_left = 0;
    for (auto t : comp.tiles)
        if (wire[flat(t)]) ++wires_left;

    std::vector<std::vector<TileCoord>> paths;
    std::vector<int> region(rows * cols);

    auto in_bounds = [&](TileCoord t) {
        return t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols;
    };

    while (true) {
        if (rem.empty()) {
            if (wires_left > 0) { comp.status = Component::Status::Ambiguous; return; }
            comp.status = Component::Status::KnownPath;
            comp.paths = std::move(paths);
            return;
        }
        // Label connected regions of remaining wire tiles.
        std::fill(region.begin(), region.end(), -1);
        int n_regions = 0;
        std::vector<int> region_size;
        for (auto seed : comp.tiles) {
            if (!wire[flat(seed)] || region[flat(seed)] >= 0) continue;
            std::queue<TileCoord> bfs;
            bfs.push(seed);
            region[flat(seed)] = n_regions;
            int size = 1;
            while (!bfs.empty()) {
                TileCoord t = bfs.front();
                bfs.pop();
                for (auto d : kNeighborDeltas) {
                    TileCoord v{t.row + d.row, t.col + d.col};
                    if (!in_bounds(v) || !wire[flat(v)] || region[flat(v)] >= 0) continue;
                    region[flat(v)] = n_regions;
                    bfs.push(v);
                    ++size;
                }
            }
            region_size.push_back(size);
            ++n_regions;
        }
        // Endpoints adjacent to each region, and per-endpoint neighbor sets
        // in the constricted logical graph.
        std::vector<std::vector<int>> region_eps(n_regions);
        std::vector<std::vector<int>> regions_of(rem.size());
        std::vector<std::uint8_t> rem_mask(rows * cols, 0);
        for (auto e : rem) rem_mask[flat(e)] = 1;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            for (auto d : kNeighborDeltas) {
                TileCoord v{rem[i].row + d.row, rem[i].col + d.col};
                if (!in_bounds(v) || !wire[flat(v)]) continue;
                int rg = region[flat(v)];
                if (std::find(regions_of[i].begin(), regions_of[i].end(), rg) ==
                    regions_of[i].end()) {
                    regions_of[i].push_back(rg);
                    region_eps[rg].push_back(static_cast<int>(i));
                }
            }
        }
        auto logical_neighbors = [&](std::size_t i) {
            std::vector<int> nbrs;
            auto add = [&](int j) {
                if (j != static_cast<int>(i) &&
                    std::find(nbrs.begin(), nbrs.end(), j) == nbrs.end())
                    nbrs.push_back(j);
            };
            for (auto d : kNeighborDeltas) {
                TileCoord v{rem[i].row + d.row, rem[i].col + d.col};
                if (!in_bounds(v) || !rem_mask[flat(v)]) continue;
                for (std::size_t j = 0; j < rem.size(); ++j)
                    if (rem[j] == v) add(static_cast<int>(j));
            }
            for (int rg : regions_of[i])
                for (int j : region_eps[rg]) add(j);
            return nbrs;
        };

        int pick = -1, partner = -1;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            auto nbrs = logical_neighbors(i);
            if (nbrs.size() == 1) { pick = static_cast<int>(i); partner = nbrs[0]; break; }
        }
        if (pick < 0) { comp.status = Component::Status::Ambiguous; return; }

        TileCoord e1 = rem[pick], e2 = rem[partner];
        const bool direct = std::abs(e1.row - e2.row) + std::abs(e1.col - e2.col) == 1;
        const int route_classes = static_cast<int>(regions_of[pick].size()) + (direct ? 1 : 0);
        if (route_classes != 1) { comp.status = Component::Status::Ambiguous; return; }

        std::vector<TileCoord> route;
        if (direct) {
            route = {e1, e2};
        } else {
            // One wire region; its shortest e1->e2 path must consume it fully,
            // otherwise the leftover could alter the valid decompositions.
            const int rg = regions_of[pick][0];
            std::vector<int> parent(rows * cols, -2);
            std::queue<TileCoord> bfs;
            parent[flat(e1)] = -1;
            bfs.push(e1);
            bool found = false;
            while (!bfs.empty() && !found) {
                TileCoord t = bfs.front();
                bfs.pop();
                for (auto d : kNeighborDeltas) {
                    TileCoord v{t.row + d.row, t.col + d.col};
                    if (!in_bounds(v) || parent[flat(v)] != -2) continue;
                    if (v == e2 && !(t == e1)) {
                        parent[flat(v)] = flat(t);
                        found = true;
                        break;
                    }
                    if (wire[flat(v)] && region[flat(v)] == rg) {
                        parent[flat(v)] = flat(t);
                        bfs.push(v);
                    }
                }
            }
            if (!found) { comp.status = Component::Status::Ambiguous; return; }
            for (int v = flat(e2); v != -1; v = parent[v]) route.push_back({v / cols, v % cols});
            std::reverse(route.begin(), route.end());
            if (static_cast<int>(route.size()) - 2 != region_size[rg]) {
                comp.status = Component::Status::Ambiguous;
                return;
            }
        }
        for (std::size_t i = 1; i + 1 < route.size(); ++i) {
            wire[flat(route[i])] = 0;
            --wires_left;
        }
        rem.erase(rem.begin() + std::max(pick, partner));
        rem.erase(rem.begin() + std::min(pick, partner));
        paths.push_back(std::move(route));
    }
}

inline void stamp_recovered(std::vector<std::uint8_t>& cells, int cols, const Component& comp) {
    const auto flat = [cols](TileCoord t) { return t.row * cols + t.col; };
    if (comp.status == Component::Status::Ambiguous) {
        for (auto t : comp.tiles) cells[flat(t)] = cell::kAmbiguousWire;
        for (auto t : comp.endpoints) cells[flat(t)] = cell::kAmbiguousEndpoint;
        return;
    }
    for (const auto& path : comp.paths) {
        cells[flat(path.front())] |= cell::kRoleTarget << 4;
        cells[flat(path.back())] |= cell::kRoleTarget << 4;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            cells[flat(path[i])] |= cell::kRoleConnection << 4;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            cells[flat(path[i])] |= cell::edge_toward(path[i], path[i + 1]);
            cells[flat(path[i + 1])] |= cell::edge_toward(path[i + 1], path[i]);
        }
    }
}

}  // namespace detail

/// Heuristic 3: recovers an annotated L3 trace from a bare L1 trace.
/// Pass 1 unions H2 endpoints over all frames into a global registry;
/// pass 2 re-sieves every frame, partitions actives into components and
/// decomposes each into known paths where the decomposition is forced.
inline RecoveryResult h3_recover(const Trace& l1) {
    if (l1.level != TraceLevel::L1) throw std::invalid_argument("h3_recover expects an L1 trace");
    if (l1.frames.empty()) throw std::invalid_argument("h3_recover expects a nonempty trace");

    RecoveryResult out;
    out.rows = l1.rows;
    out.cols = l1.cols;
    out.registry.rows = l1.rows;
    out.registry.cols = l1.cols;
    out.registry.mask.assign(static_cast<std::size_t>(l1.rows) * l1.cols, 0);

    for (const auto& frame : l1.frames)
        for (auto t : h2_detect_endpoints(frame, l1.rows, l1.cols)) out.registry.insert(t);

    out.frames.reserve(l1.frames.size());
    for (const auto& frame : l1.frames) {
        RecoveredFrame rec;
        rec.cells.assign(static_cast<std::size_t>(l1.rows) * l1.cols, 0);

        std::vector<int> comp_of(static_cast<std::size_t>(l1.rows) * l1.cols, -1);
        for (int i = 0; i < l1.rows * l1.cols; ++i) {
            if (!frame[i] || comp_of[i] >= 0) continue;
            Component comp;
            std::queue<int> bfs;
            bfs.push(i);
            comp_of[i] = static_cast<int>(rec.components.size());
            while (!bfs.empty()) {
                int u = bfs.front();
                bfs.pop();
                TileCoord t{u / l1.cols, u % l1.cols};
                comp.tiles.push_back(t);
                for (auto d : kNeighborDeltas) {
                    TileCoord v{t.row + d.row, t.col + d.col};
                    if (v.row < 0 || v.row >= l1.rows || v.col < 0 || v.col >= l1.cols) continue;
                    int fv = v.row * l1.cols + v.col;
                    if (frame[fv] && comp_of[fv] < 0) {
                        comp_of[fv] = comp_of[i];
                        bfs.push(fv);
                    }
                }
            }
            std::sort(comp.tiles.begin(), comp.tiles.end());
            for (auto t : comp.tiles)
                if (out.registry.contains(t)) comp.endpoints.push_back(t);
            detail::decompose_component(comp, l1.rows, l1.cols);
            detail::stamp_recovered(rec.cells, l1.cols, comp);
            rec.components.push_back(std::move(comp));
        }
        out.frames.push_back(std::move(rec));
    }
    return out;
}

/// Recovered frames as an L3 trace (reserved ambiguity codes included).
inline Trace recovered_trace(const RecoveryResult& r) {
    Trace t;
    t.level = TraceLevel::L3;
    t.rows = r.rows;
    t.cols = r.cols;
    for (const auto& f : r.frames) t.frames.push_back(f.cells);
    return t;
}

}  // namespace lstrace
