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

GateDag chain(int n) {
    GateDag g;
    for (int i = 0; i < n; ++i) {
        GateNode node;
        node.timestep = i;
        g.add_node(node);
        if (i > 0) g.add_edge(i - 1, i);
    }
    g.finalize();
    return g;
}

GateDag random_dag(std::mt19937_64& rng, int n, double edge_prob) {
    GateDag g;
    for (int i = 0; i < n; ++i) {
        GateNode node;
        node.timestep = i;
        g.add_node(node);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((rng() % 1000) / 1000.0 < edge_prob) g.add_edge(i, j);
    g.finalize();
    return g;
}

// Exhaustive injective search, the independent completeness reference.
int brute_count(const GateDag& pattern, const GateDag& target) {
    std::vector<int> map(pattern.nodes.size(), -1);
    std::vector<bool> used(target.nodes.size(), false);
    int found = 0;
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == pattern.nodes.size()) {
            ++found;
            return;
        }
        for (int t = 0; t < target.n_nodes(); ++t) {
            if (used[t]) continue;
            map[p] = t;
            bool ok = true;
            for (auto [u, v] : pattern.edges) {
                if (map[u] >= 0 && map[v] >= 0 && !target.has_edge(map[u], map[v])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[t] = true;
                self(self, p + 1);
                used[t] = false;
            }
            map[p] = -1;
        }
    };
    rec(rec, 0);
    return found;
}

}  // namespace

TEST_CASE("a 2-chain embeds twice in a 3-chain") {
    GateDag p = chain(2), t = chain(3);
    MatchQuery q;
    q.pattern = &p;
    q.target = &t;
    q.mode = MatchMode::CountAll;
    auto r = find_subgraph(q);
    REQUIRE(r.status == MatchStatus::Found);
    REQUIRE(r.all_mappings.size() == 2);
    std::set<std::vector<int>> maps(r.all_mappings.begin(), r.all_mappings.end());
    CHECK(maps == std::set<std::vector<int>>{{0, 1}, {1, 2}});
    for (const auto& m : r.all_mappings) CHECK(verify_mapping(p, t, m));
}

TEST_CASE("degree bounds prune impossible patterns without search") {
    // star with 4 out-edges vs a target of max out-degree 3
    GateDag star;
    for (int i = 0; i < 5; ++i) {
        GateNode n;
        n.timestep = i == 0 ? 0 : 1;
        star.add_node(n);
    }
    for (int i = 1; i < 5; ++i) star.add_edge(0, i);
    star.finalize();
    std::mt19937_64 rng(3);
    GateDag target = random_dag(rng, 8, 0.0);
    for (int i = 1; i <= 3; ++i) target.add_edge(0, i);
    target.finalize();
    MatchQuery q;
    q.pattern = &star;
    q.target = &target;
    auto r = find_subgraph(q);
    CHECK(r.status == MatchStatus::NotFound);
    CHECK(r.states <= 16);
}

TEST_CASE("patterns larger than the target fail immediately") {
    GateDag p = chain(4), t = chain(3);
    MatchQuery q;
    q.pattern = &p;
    q.target = &t;
    auto r = find_subgraph(q);
    CHECK(r.status == MatchStatus::NotFound);
    CHECK(r.states == 0);
}

TEST_CASE("a zero timeout degenerates to Timeout") {
    GateDag p = chain(2), t = chain(3);
    MatchQuery q;
    q.pattern = &p;
    q.target = &t;
    q.timeout_ms = 0.0;
    CHECK(find_subgraph(q).status == MatchStatus::Timeout);

    auto reports = detect_subroutines({{"anything", &p}}, t, 0.0);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].status == MatchStatus::Timeout);
}

TEST_CASE("found mappings always verify and match brute-force counts") {
    std::mt19937_64 rng(404);
    int found_cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
        GateDag target = random_dag(rng, 6 + rng() % 5, 0.25);
        GateDag pattern = random_dag(rng, 2 + rng() % 5, 0.35);
        MatchQuery q;
        q.pattern = &pattern;
        q.target = &target;
        q.mode = MatchMode::CountAll;
        auto r = find_subgraph(q);
        int expected = brute_count(pattern, target);
        INFO("trial " << trial);
        CHECK(static_cast<int>(r.all_mappings.size()) == expected);
        for (const auto& m : r.all_mappings) REQUIRE(verify_mapping(pattern, target, m));
        if (expected > 0) ++found_cases;
    }
    CHECK(found_cases > 10);
}

TEST_CASE("embeddings are monotone under target augmentation") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        GateDag target = random_dag(rng, 8, 0.3);
        GateDag pattern = random_dag(rng, 4, 0.4);
        MatchQuery q;
        q.pattern = &pattern;
        q.target = &target;
        bool before = find_subgraph(q).status == MatchStatus::Found;
        if (!before) continue;
        // augment: extra node plus extra edges
        GateDag bigger = target;
        GateNode extra;
        extra.timestep = 99;
        int id = bigger.add_node(extra);
        bigger.add_edge(0, id);
        bigger.finalize();
        q.target = &bigger;
        CHECK(find_subgraph(q).status == MatchStatus::Found);
    }
}

TEST_CASE("detect_subroutines flags exactly the merged constituents") {
    auto [qasm, record] = synthesize(
        {{"add_3", testutil::corpus("add_3")}, {"qft_4", testutil::corpus("qft_4")}}, 11);
    GateDag target = circuit_to_dag(parse_qasm(qasm));
    GateDag add3 = circuit_to_dag(parse_qasm(testutil::corpus("add_3")));
    GateDag qft4 = circuit_to_dag(parse_qasm(testutil::corpus("qft_4")));
    GateDag trotter5 = circuit_to_dag(parse_qasm(testutil::corpus("trotter_5")));

    auto reports = detect_subroutines(
        {{"add_3", &add3}, {"qft_4", &qft4}, {"trotter_5", &trotter5}}, target, 5000.0);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].status == MatchStatus::Found);
    CHECK(reports[1].status == MatchStatus::Found);
    CHECK(reports[2].status == MatchStatus::NotFound);
    CHECK(verify_mapping(add3, target, reports[0].mapping));
}
