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

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"

using namespace lstrace;

namespace {

// Invariants every routed schedule must satisfy.
void check_schedule(const LogicalCircuit& c, const Layout& layout, const ScheduleResult& r) {
    auto layers = layered_schedule(c);
    REQUIRE(r.trace.n_frames() == static_cast<int>(r.steps.size()));
    CHECK(r.steps.size() >= layers.layers.size());

    int routed = 0;
    for (std::size_t f = 0; f < r.steps.size(); ++f) {
        const auto& step = r.steps[f];
        std::set<TileCoord> used;
        std::set<TileCoord> active_in_frame;
        for (const auto& g : step.gates) {
            ++routed;
            REQUIRE(g.path.size() >= 2);
            CHECK(g.path.front() == g.control);
            CHECK(g.path.back() == g.target);
            const auto& gate = c.gates[g.gate_id];
            int manhattan = std::abs(g.control.row - g.target.row) +
                            std::abs(g.control.col - g.target.col);
            CHECK(static_cast<int>(g.path.size()) >= manhattan + 1);
            CHECK(layout.qubit_tile(gate.qubit_a) == g.control);
            CHECK(layout.qubit_tile(gate.qubit_b) == g.target);
            for (std::size_t i = 0; i < g.path.size(); ++i) {
                // vertex-disjoint across the whole step
                CHECK(used.insert(g.path[i]).second);
                active_in_frame.insert(g.path[i]);
                if (i > 0)
                    CHECK(std::abs(g.path[i].row - g.path[i - 1].row) +
                              std::abs(g.path[i].col - g.path[i - 1].col) ==
                          1);
                // interiors are routing tiles only
                if (i > 0 && i + 1 < g.path.size()) CHECK_FALSE(layout.is_qubit_tile(g.path[i]));
            }
        }
        // frame actives equal the union of path tiles
        std::set<TileCoord> frame_active;
        for (int i = 0; i < layout.n_tiles(); ++i)
            if (r.trace.frames[f][i]) frame_active.insert(layout.unflat(i));
        CHECK(frame_active == active_in_frame);
        // edge-bit symmetry
        for (int row = 0; row < layout.rows; ++row)
            for (int col = 0; col < layout.cols; ++col) {
                auto code = r.trace.at(f, {row, col});
                if (col + 1 < layout.cols) {
                    bool e = code & cell::kEdgeE;
                    bool w = r.trace.at(f, {row, col + 1}) & cell::kEdgeW;
                    CHECK(e == w);
                }
                if (row + 1 < layout.rows) {
                    bool s = code & cell::kEdgeS;
                    bool n = r.trace.at(f, {row + 1, col}) & cell::kEdgeN;
                    CHECK(s == n);
                }
            }
    }
    CHECK(routed == static_cast<int>(c.gates.size()));
}

}  // namespace

TEST_CASE("route_gate finds the unique shortest path on compact-4") {
    Layout l = build_layout(LayoutKind::Compact, 4);
    std::vector<std::uint8_t> blocked(l.n_tiles(), 0);
    auto path = route_gate(l, blocked, {0, 0}, {2, 0});
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<TileCoord>{{0, 0}, {1, 0}, {2, 0}});
}

TEST_CASE("adjacent qubits route with an empty interior") {
    Layout l = build_layout(LayoutKind::Intermediate, 2);
    std::vector<std::uint8_t> blocked(l.n_tiles(), 0);
    auto path = route_gate(l, blocked, {0, 0}, {0, 1});
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<TileCoord>{{0, 0}, {0, 1}});
}

TEST_CASE("an enclosed destination reports congestion") {
    Layout l = build_layout(LayoutKind::Intermediate, 4);
    std::vector<std::uint8_t> blocked(l.n_tiles(), 0);
    blocked[l.flat({1, 2})] = 1;  // the only way down from q2's column
    auto path = route_gate(l, blocked, {0, 0}, {0, 2});
    CHECK_FALSE(path.has_value());
}

TEST_CASE("single gate on intermediate-2 produces the documented frame") {
    auto c = parse_qasm("qreg q[2]; cx q[0],q[1];");
    auto r = schedule_and_route(c, build_layout(LayoutKind::Intermediate, 2));
    REQUIRE(r.trace.n_frames() == 1);
    CHECK(r.trace.at(0, {0, 0}) == 0b0100001);
    CHECK(r.trace.at(0, {0, 1}) == 0b0110010);
    CHECK(r.trace.at(0, {1, 0}) == 0);
}

TEST_CASE("disjoint gates in one layer share a frame") {
    auto c = parse_qasm("qreg q[4]; cx q[0],q[1]; cx q[2],q[3];");
    auto r = schedule_and_route(c, build_layout(LayoutKind::Intermediate, 4));
    REQUIRE(r.trace.n_frames() == 1);
    CHECK(r.steps[0].gates.size() == 2);
}

TEST_CASE("a shared corridor defers the second gate to a new frame") {
    auto c = parse_qasm("qreg q[4]; cx q[0],q[2]; cx q[1],q[3];");
    auto r = schedule_and_route(c, build_layout(LayoutKind::Intermediate, 4));
    REQUIRE(r.trace.n_frames() == 2);
    CHECK(r.steps[0].gates.size() == 1);
    CHECK(r.steps[1].gates.size() == 1);
    CHECK(r.steps[1].gates[0].gate_id == 1);
}

TEST_CASE("empty circuit yields an empty trace") {
    auto c = parse_qasm("qreg q[2];");
    auto r = schedule_and_route(c, build_layout(LayoutKind::Compact, 2));
    CHECK(r.trace.n_frames() == 0);
}

TEST_CASE("capacity mismatch is rejected") {
    auto c = parse_qasm("qreg q[5]; cx q[0],q[4];");
    CHECK_THROWS_AS(schedule_and_route(c, build_layout(LayoutKind::Compact, 4)),
                    std::invalid_argument);
}

TEST_CASE("schedules satisfy routing invariants on every layout") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(rng() % 10);
        auto c = testutil::random_circuit(rng, n, 10 + rng() % 40);
        for (auto kind : testutil::kAllLayouts) {
            Layout layout = build_layout(kind, n);
            auto r = schedule_and_route(c, layout);
            INFO(to_string(kind) << " trial " << trial);
            check_schedule(c, layout, r);
            // L1 projection flags exactly the nonzero L3 cells
            Trace l1 = downgrade(r.trace, TraceLevel::L1);
            for (int f = 0; f < r.trace.n_frames(); ++f)
                for (int i = 0; i < layout.n_tiles(); ++i)
                    CHECK((l1.frames[f][i] == 1) == (r.trace.frames[f][i] != 0));
        }
    }
}

TEST_CASE("scheduling is deterministic, also under a fixed shuffle seed") {
    std::mt19937_64 rng(5);
    auto c = testutil::random_circuit(rng, 8, 30);
    Layout layout = build_layout(LayoutKind::Compact, 8);
    auto a = schedule_and_route(c, layout);
    auto b = schedule_and_route(c, layout);
    CHECK(a.trace.frames == b.trace.frames);

    ScheduleOptions opts;
    opts.shuffle_seed = 99;
    auto s1 = schedule_and_route(c, layout, opts);
    auto s2 = schedule_and_route(c, layout, opts);
    CHECK(s1.trace.frames == s2.trace.frames);
    check_schedule(c, layout, s1);
}

TEST_CASE("interleaved mode keeps dependencies ordered") {
    std::mt19937_64 rng(6);
    auto c = testutil::random_circuit(rng, 6, 25);
    Layout layout = build_layout(LayoutKind::Intermediate, 6);
    ScheduleOptions opts;
    opts.interleave_layers = true;
    auto r = schedule_and_route(c, layout, opts);
    // every gate routed exactly once, dependencies in strictly earlier steps
    std::vector<int> step_of(c.gates.size(), -1);
    for (const auto& s : r.steps)
        for (const auto& g : s.gates) {
            CHECK(step_of[g.gate_id] == -1);
            step_of[g.gate_id] = s.timestep;
        }
    auto dag = circuit_to_dag(c);
    for (auto [u, v] : dag.edges) CHECK(step_of[u] < step_of[v]);
}
