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

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lstrace {

/// Grid coordinate of a single surface-code tile (row-major, 0-based).
struct TileCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const TileCoord&) const = default;
};

inline std::string to_string(TileCoord t) {
    return "(" + std::to_string(t.row) + "," + std::to_string(t.col) + ")";
}

/// 4-neighborhood deltas in row-major order (N, W, E, S).
inline constexpr std::array<TileCoord, 4> kNeighborDeltas = {
    TileCoord{-1, 0}, TileCoord{0, -1}, TileCoord{0, 1}, TileCoord{1, 0}};

enum class LayoutKind { SquareSparse, Compact, Intermediate };

inline std::string to_string(LayoutKind k) {
    switch (k) {
        case LayoutKind::SquareSparse: return "sparse";
        case LayoutKind::Compact: return "compact";
        case LayoutKind::Intermediate: return "intermediate";
    }
    return "?";
}

inline std::optional<LayoutKind> layout_kind_from_string(std::string_view s) {
    if (s == "sparse" || s == "square_sparse") return LayoutKind::SquareSparse;
    if (s == "compact") return LayoutKind::Compact;
    if (s == "intermediate") return LayoutKind::Intermediate;
    return std::nullopt;
}

/// Placement of logical qubits on a rows x cols tile grid. Every tile not
/// hosting a qubit is a routing tile.
struct Layout {
    LayoutKind kind = LayoutKind::Compact;
    int rows = 0;
    int cols = 0;
    std::vector<TileCoord> qubit_tiles;  // index = logical qubit id

    // rows*cols occupancy mask, rebuilt by finalize()
    std::vector<std::uint8_t> qubit_mask;

    int n_qubits() const { return static_cast<int>(qubit_tiles.size()); }
    int n_tiles() const { return rows * cols; }
    int flat(TileCoord t) const { return t.row * cols + t.col; }
    TileCoord unflat(int i) const { return {i / cols, i % cols}; }

    bool in_bounds(TileCoord t) const {
        return t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols;
    }
    bool is_qubit_tile(TileCoord t) const { return qubit_mask[flat(t)] != 0; }
    TileCoord qubit_tile(int q) const { return qubit_tiles.at(q); }

    void finalize() {
        qubit_mask.assign(static_cast<std::size_t>(rows) * cols, 0);
        for (auto t : qubit_tiles) {
            if (!in_bounds(t)) throw std::invalid_argument("qubit tile out of bounds " + to_string(t));
            qubit_mask[flat(t)] = 1;
        }
    }
};

/// Builds one of the three canonical layouts for n_qubits logical qubits.
///
/// SquareSparse: qubits on the odd sublattice of a (2a+1)x(2b+1) grid, so
/// every qubit has a routing tile on all four sides.
/// Compact: qubits in rows 0 and 2 of a 3-row grid, row 1 is the channel.
/// Intermediate: qubits in row 0 of a 2-row grid, row 1 is the channel.
inline Layout build_layout(LayoutKind kind, int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("layout requires at least 2 qubits");
    Layout l;
    l.kind = kind;
    switch (kind) {
        case LayoutKind::SquareSparse: {
            const int b = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_qubits))));
            const int a = (n_qubits + b - 1) / b;
            l.rows = 2 * a + 1;
            l.cols = 2 * b + 1;
            for (int i = 0; i < n_qubits; ++i)
                l.qubit_tiles.push_back({2 * (i / b) + 1, 2 * (i % b) + 1});
            break;
        }
        case LayoutKind::Compact: {
            const int w = (n_qubits + 1) / 2;
            l.rows = 3;
            l.cols = w;
            for (int i = 0; i < n_qubits; ++i) {
                if (i < w)
                    l.qubit_tiles.push_back({0, i});
                else
                    l.qubit_tiles.push_back({2, i - w});
            }
            break;
        }
        case LayoutKind::Intermediate: {
            l.rows = 2;
            l.cols = n_qubits;
            for (int i = 0; i < n_qubits; ++i) l.qubit_tiles.push_back({0, i});
            break;
        }
    }
    l.finalize();
    return l;
}

/// Checks all Layout invariants; returns the first violation found, or
/// nullopt if the layout is well formed.
inline std::optional<std::string> validate_layout(const Layout& l) {
    if (l.rows <= 0 || l.cols <= 0) return "empty grid";
    if (l.qubit_mask.size() != static_cast<std::size_t>(l.n_tiles())) return "stale qubit mask";
    std::vector<int> owner(l.n_tiles(), -1);
    for (int q = 0; q < l.n_qubits(); ++q) {
        TileCoord t = l.qubit_tiles[q];
        if (!l.in_bounds(t)) return "qubit tile out of bounds " + to_string(t);
        if (owner[l.flat(t)] >= 0)
            return "overlapping qubit tiles at " + to_string(t) + " (qubits " +
                   std::to_string(owner[l.flat(t)]) + " and " + std::to_string(q) + ")";
        owner[l.flat(t)] = q;
    }
    // Routing reachability: every pair of qubit tiles must be connected on an
    // otherwise empty grid. Two qubits are routable iff they are adjacent or
    // both touch a common connected routing region.
    std::vector<int> comp(l.n_tiles(), -1);
    int n_comp = 0;
    for (int i = 0; i < l.n_tiles(); ++i) {
        if (comp[i] >= 0 || l.qubit_mask[i]) continue;
        std::queue<int> bfs;
        bfs.push(i);
        comp[i] = n_comp;
        while (!bfs.empty()) {
            TileCoord t = l.unflat(bfs.front());
            bfs.pop();
            for (auto d : kNeighborDeltas) {
                TileCoord n{t.row + d.row, t.col + d.col};
                if (!l.in_bounds(n) || l.is_qubit_tile(n)) continue;
                if (comp[l.flat(n)] < 0) {
                    comp[l.flat(n)] = n_comp;
                    bfs.push(l.flat(n));
                }
            }
        }
        ++n_comp;
    }
    auto touching = [&](TileCoord t) {
        std::vector<int> cs;
        for (auto d : kNeighborDeltas) {
            TileCoord n{t.row + d.row, t.col + d.col};
            if (l.in_bounds(n) && !l.is_qubit_tile(n)) cs.push_back(comp[l.flat(n)]);
        }
        return cs;
    };
    std::vector<std::vector<int>> qcomps;
    qcomps.reserve(l.qubit_tiles.size());
    for (auto t : l.qubit_tiles) qcomps.push_back(touching(t));
    for (int i = 0; i < l.n_qubits(); ++i) {
        for (int j = i + 1; j < l.n_qubits(); ++j) {
            TileCoord a = l.qubit_tiles[i], b = l.qubit_tiles[j];
            if (std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1) continue;
            bool shared = false;
            for (int ca : qcomps[i]) {
                for (int cb : qcomps[j])
                    if (ca == cb) { shared = true; break; }
                if (shared) break;
            }
            if (!shared)
                return "qubit unreachable: no routing path between " + to_string(a) + " and " +
                       to_string(b);
        }
    }
    return std::nullopt;
}

}  // namespace lstrace
