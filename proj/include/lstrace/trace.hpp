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
#include <stdexcept>
#include <vector>

#include "lstrace/layout.hpp"

namespace lstrace {

/// 7-bit L3 cell code, bit layout [amb][role1][role0][N][S][W][E].
/// Roles: 00 idle, 01 connection (wire), 10 control, 11 target/endpoint.
namespace cell {

using Code = std::uint8_t;

inline constexpr Code kAmbBit = 1u << 6;
inline constexpr Code kRoleMask = 0b0110000;
inline constexpr Code kEdgeMask = 0b0001111;

inline constexpr Code kRoleConnection = 0b01;
inline constexpr Code kRoleControl = 0b10;
inline constexpr Code kRoleTarget = 0b11;

// Reserved codes for recovered-but-ambiguous cells.
inline constexpr Code kAmbiguousEndpoint = 0b1110000;
inline constexpr Code kAmbiguousWire = 0b1010000;

// Edge bit index by direction: N, S, W, E.
inline constexpr Code kEdgeN = 1u << 3;
inline constexpr Code kEdgeS = 1u << 2;
inline constexpr Code kEdgeW = 1u << 1;
inline constexpr Code kEdgeE = 1u << 0;

inline constexpr Code role(Code c) { return (c & kRoleMask) >> 4; }
inline constexpr bool ambiguous(Code c) { return (c & kAmbBit) != 0; }
inline constexpr bool active(Code c) { return c != 0; }
inline constexpr Code make(bool amb, Code role2, Code edges) {
    return static_cast<Code>((amb ? kAmbBit : 0) | (role2 << 4) | (edges & kEdgeMask));
}

/// Edge bit on `from` pointing toward the 4-adjacent tile `to`.
inline Code edge_toward(TileCoord from, TileCoord to) {
    if (to.row == from.row - 1 && to.col == from.col) return kEdgeN;
    if (to.row == from.row + 1 && to.col == from.col) return kEdgeS;
    if (to.row == from.row && to.col == from.col - 1) return kEdgeW;
    if (to.row == from.row && to.col == from.col + 1) return kEdgeE;
    throw std::invalid_argument("edge_toward: tiles not adjacent");
}

}  // namespace cell

enum class TraceLevel : int { L1 = 1, L2 = 2, L3 = 3 };

/// Time-indexed per-tile activity matrices. Frame entries are 1 bit at L1,
/// 5 bits [busy][N][S][W][E] at L2 and the full 7-bit cell code at L3.
struct Trace {
    TraceLevel level = TraceLevel::L3;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::uint8_t>> frames;  // row-major, rows*cols each

    int n_frames() const { return static_cast<int>(frames.size()); }
    int flat(TileCoord t) const { return t.row * cols + t.col; }
    TileCoord unflat(int i) const { return {i / cols, i % cols}; }

    std::uint8_t at(int frame, TileCoord t) const { return frames[frame][flat(t)]; }

    std::vector<std::uint8_t>& add_frame() {
        frames.emplace_back(static_cast<std::size_t>(rows) * cols, 0);
        return frames.back();
    }
};

/// Projects an L3 trace down to L1 (busy bit) or L2 (busy + edge bits).
inline Trace downgrade(const Trace& t, TraceLevel level) {
    if (t.level != TraceLevel::L3) throw std::invalid_argument("downgrade expects an L3 trace");
    if (level == TraceLevel::L3) return t;
    Trace out;
    out.level = level;
    out.rows = t.rows;
    out.cols = t.cols;
    out.frames.reserve(t.frames.size());
    for (const auto& f : t.frames) {
        auto& g = out.add_frame();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (level == TraceLevel::L1) {
                g[i] = f[i] != 0 ? 1 : 0;
            } else {
                g[i] = static_cast<std::uint8_t>(((f[i] != 0 ? 1 : 0) << 4) |
                                                 (f[i] & cell::kEdgeMask));
            }
        }
    }
    return out;
}

}  // namespace lstrace
