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
using testutil::component_of;

TEST_CASE("a strip admits exactly one solution") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}, {0, 3}}, {{0, 0}, {0, 3}});
    auto r = enumerate_solutions(comp);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].paths ==
          std::vector<std::vector<TileCoord>>{{{0, 0}, {0, 1}, {0, 2}, {0, 3}}});
    CHECK(r.stats.complete);
}

TEST_CASE("the 2x3 block with corner endpoints has three solutions") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}},
                             {{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    auto r = enumerate_solutions(comp);
    REQUIRE(r.solutions.size() == 3);

    PathSolution rows;
    rows.paths = {{{0, 0}, {0, 1}, {0, 2}}, {{1, 0}, {1, 1}, {1, 2}}};
    std::sort(rows.paths.begin(), rows.paths.end());
    PathSolution left_hook;  // (0,0)->(0,1)->(1,1)->(1,0) plus (0,2)-(1,2)
    left_hook.paths = {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {{0, 2}, {1, 2}}};
    std::sort(left_hook.paths.begin(), left_hook.paths.end());
    PathSolution right_hook;  // (0,2)->(0,1)->(1,1)->(1,2) plus (0,0)-(1,0)
    right_hook.paths = {{{0, 2}, {0, 1}, {1, 1}, {1, 2}}, {{0, 0}, {1, 0}}};
    std::sort(right_hook.paths.begin(), right_hook.paths.end());

    std::vector<PathSolution> expected = {rows, left_hook, right_hook};
    std::sort(expected.begin(), expected.end());
    CHECK(r.solutions == expected);
}

TEST_CASE("a 2x2 block with diagonal endpoints has no valid cover") {
    auto comp = component_of({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {{0, 0}, {1, 1}});
    CHECK(enumerate_solutions(comp).solutions.empty());
}

TEST_CASE("odd endpoint counts raise before searching") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}}, {{0, 0}, {0, 1}, {0, 2}});
    CHECK_THROWS_AS(enumerate_solutions(comp), OddEndpointError);
    CHECK_THROWS_AS(brute_force_oracle(comp), OddEndpointError);
}

TEST_CASE("degenerate components") {
    CHECK(enumerate_solutions(component_of({}, {})).solutions.empty());
    CHECK(brute_force_oracle(component_of({}, {})).solutions.empty());
    // single pair, zero wires
    auto pair = component_of({{0, 0}, {0, 1}}, {{0, 0}, {0, 1}});
    CHECK(enumerate_solutions(pair).solutions.size() == 1);
    CHECK(brute_force_oracle(pair).solutions.size() == 1);
}

TEST_CASE("an unreachable active tile kills all solutions") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}, {2, 2}}, {{0, 0}, {0, 2}});
    CHECK(enumerate_solutions(comp).solutions.empty());
}

TEST_CASE("enumeration is deterministic") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}},
                             {{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    auto a = enumerate_solutions(comp);
    auto b = enumerate_solutions(comp);
    CHECK(a.solutions == b.solutions);
    CHECK(a.stats.expansions == b.stats.expansions);
}

TEST_CASE("budget exhaustion flags an incomplete result") {
    auto comp = component_of({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}},
                             {{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    EnumerationBudget budget;
    budget.max_expansions = 2;
    auto r = enumerate_solutions(comp, budget);
    CHECK_FALSE(r.stats.complete);
}

TEST_CASE("the true routed paths are among the enumerated solutions") {
    // For every ambiguous component of a generated trace whose endpoints
    // were all recovered, the ground-truth path set must appear verbatim
    // in the enumeration output.
    std::mt19937_64 rng(909);
    int ambiguous_checked = 0;
    for (int trial = 0; trial < 15; ++trial) {
        int n = 5 + static_cast<int>(rng() % 10);
        auto c = testutil::random_circuit(rng, n, 15 + rng() % 40);
        for (auto kind : testutil::kAllLayouts) {
            Layout layout = build_layout(kind, n);
            auto sched = schedule_and_route(c, layout);
            Trace l1 = downgrade(sched.trace, TraceLevel::L1);
            auto rec = h3_recover(l1);
            for (std::size_t f = 0; f < rec.frames.size(); ++f) {
                for (const auto& comp : rec.frames[f].components) {
                    if (comp.status != Component::Status::Ambiguous) continue;
                    if (comp.endpoints.size() % 2 != 0) continue;
                    // truth paths whose tiles lie inside this component
                    PathSolution truth;
                    std::set<TileCoord> tiles(comp.tiles.begin(), comp.tiles.end());
                    std::set<TileCoord> true_eps;
                    for (const auto& g : sched.steps[f].gates) {
                        if (!tiles.count(g.path.front())) continue;
                        auto p = g.path;
                        if (p.back() < p.front()) std::reverse(p.begin(), p.end());
                        truth.paths.push_back(p);
                        true_eps.insert(p.front());
                        true_eps.insert(p.back());
                    }
                    // only when every true endpoint was recovered
                    if (std::set<TileCoord>(comp.endpoints.begin(), comp.endpoints.end()) !=
                        true_eps)
                        continue;
                    std::sort(truth.paths.begin(), truth.paths.end());
                    auto res = enumerate_solutions(comp);
                    INFO(to_string(kind) << " trial " << trial << " frame " << f);
                    CHECK(std::find(res.solutions.begin(), res.solutions.end(), truth) !=
                          res.solutions.end());
                    ++ambiguous_checked;
                }
            }
        }
    }
    CHECK(ambiguous_checked > 20);
}

TEST_CASE("enumerate_solutions matches the oracle on random components") {
    std::mt19937_64 rng(31337);
    int nontrivial = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int rows = 2 + rng() % 3, cols = 2 + rng() % 4;
        // random connected active region
        std::vector<TileCoord> tiles{{static_cast<int>(rng() % rows),
                                      static_cast<int>(rng() % cols)}};
        int want = std::min<int>(2 + rng() % 10, rows * cols);
        while (static_cast<int>(tiles.size()) < want) {
            TileCoord base = tiles[rng() % tiles.size()];
            auto d = kNeighborDeltas[rng() % 4];
            TileCoord n{base.row + d.row, base.col + d.col};
            if (n.row < 0 || n.row >= rows || n.col < 0 || n.col >= cols) continue;
            if (std::find(tiles.begin(), tiles.end(), n) == tiles.end()) tiles.push_back(n);
        }
        // random even endpoint subset
        std::vector<TileCoord> eps;
        for (auto t : tiles)
            if (rng() % 3 == 0) eps.push_back(t);
        if (eps.size() % 2 != 0) eps.pop_back();
        if (eps.size() < 2) {
            eps = {tiles[0], tiles[tiles.size() - 1]};
            if (eps[0] == eps[1]) continue;
        }
        auto comp = component_of(tiles, eps);
        auto fast = enumerate_solutions(comp);
        auto slow = brute_force_oracle(comp);
        INFO("trial " << trial << " tiles=" << tiles.size() << " eps=" << eps.size());
        REQUIRE(fast.solutions == slow.solutions);
        if (!fast.solutions.empty()) ++nontrivial;
    }
    CHECK(nontrivial > 50);  // the generator must exercise real cases
}
