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

#include "helpers.hpp"

using namespace lstrace;

TEST_CASE("recover_pipeline reports consistent metrics") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 5 + static_cast<int>(rng() % 8);
        auto c = testutil::random_circuit(rng, n, 15 + rng() % 25);
        for (auto kind : testutil::kAllLayouts) {
            Layout layout = build_layout(kind, n);
            auto sched = schedule_and_route(c, layout);
            auto rec = recover_pipeline(downgrade(sched.trace, TraceLevel::L1));
            CHECK(rec.ambiguity_pct >= 0.0);
            CHECK(rec.ambiguity_pct <= 100.0);
            CHECK(rec.dfs_per_frame_ms.size() == sched.trace.frames.size());
            CHECK((rec.status == RecoverStatus::OddEndpoint) ==
                  !rec.endpoint_pairing_success());
            if (rec.status != RecoverStatus::OddEndpoint) {
                int ambiguous_eps = 0;
                for (const auto& f : rec.recovery.frames)
                    for (const auto& comp : f.components)
                        if (comp.status == Component::Status::Ambiguous)
                            ambiguous_eps += static_cast<int>(comp.endpoints.size());
                CHECK(rec.ambiguous_endpoint_count == ambiguous_eps);
            }
        }
    }
}

TEST_CASE("dag JSON round trip") {
    std::mt19937_64 rng(66);
    auto c = testutil::random_circuit(rng, 8, 25);
    Layout layout = build_layout(LayoutKind::SquareSparse, 8);
    auto sched = schedule_and_route(c, layout);
    auto rec = recover_pipeline(downgrade(sched.trace, TraceLevel::L1));
    if (rec.status == RecoverStatus::OddEndpoint) return;  // seed-dependent guard
    const GateDag& dag = rec.recon.dag;
    GateDag dag2 = dag_from_json(dag_to_json(dag));
    REQUIRE(dag2.n_nodes() == dag.n_nodes());
    CHECK(dag2.edges == dag.edges);
    for (int i = 0; i < dag.n_nodes(); ++i) {
        CHECK(dag2.nodes[i].timestep == dag.nodes[i].timestep);
        CHECK(dag2.nodes[i].a == dag.nodes[i].a);
        CHECK(dag2.nodes[i].b == dag.nodes[i].b);
        CHECK(dag2.nodes[i].alt_group == dag.nodes[i].alt_group);
    }
    CHECK(dag_to_json(dag2) == dag_to_json(dag));
}

TEST_CASE("composition JSON round trip") {
    auto [qasm, record] = synthesize({{"add_3", testutil::corpus("add_3")},
                                      {"qft_4", testutil::corpus("qft_4")}},
                                     77);
    auto r2 = composition_from_json(composition_to_json(record));
    CHECK(r2.total_qubits == record.total_qubits);
    REQUIRE(r2.constituents.size() == record.constituents.size());
    for (std::size_t i = 0; i < r2.constituents.size(); ++i) {
        CHECK(r2.constituents[i].name == record.constituents[i].name);
        CHECK(r2.constituents[i].perm == record.constituents[i].perm);
        CHECK(r2.constituents[i].seed == record.constituents[i].seed);
    }
}

TEST_CASE("bench cases are deterministic in all non-timing fields") {
    BenchConfig cfg;
    cfg.library = {{"qft_4", testutil::corpus("qft_4")},
                   {"trotter_4", testutil::corpus("trotter_4")}};
    cfg.recipes = {{"pair", {cfg.library[0], cfg.library[1]}}};
    cfg.perturbations = 2;
    cfg.base_seed = 3;
    cfg.match_timeout_ms = 10000.0;
    cfg.jobs = 2;

    auto a = run_bench(cfg);
    auto b = run_bench(cfg);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == 2u * 3u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].recipe == b[i].recipe);
        CHECK(a[i].layout == b[i].layout);
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].recover_status == b[i].recover_status);
        CHECK(a[i].ambiguity_pct == b[i].ambiguity_pct);
        CHECK(a[i].ambiguous_endpoints == b[i].ambiguous_endpoints);
        CHECK(a[i].dag_nodes == b[i].dag_nodes);
        CHECK(a[i].dag_edges == b[i].dag_edges);
        CHECK(a[i].truth_embedded == b[i].truth_embedded);
        REQUIRE(a[i].matches.size() == b[i].matches.size());
        for (std::size_t m = 0; m < a[i].matches.size(); ++m) {
            CHECK(a[i].matches[m].status == b[i].matches[m].status);
            CHECK(a[i].matches[m].present == b[i].matches[m].present);
        }
    }
}

TEST_CASE("layout summaries aggregate the matrix") {
    BenchConfig cfg;
    cfg.library = {{"qft_4", testutil::corpus("qft_4")},
                   {"outadd_3", testutil::corpus("outadd_3")}};
    cfg.recipes = {{"solo", {cfg.library[0]}}};
    cfg.perturbations = 2;
    cfg.layouts = {LayoutKind::Compact, LayoutKind::Intermediate};
    cfg.jobs = 1;
    auto results = run_bench(cfg);
    REQUIRE(results.size() == 4);
    for (auto kind : cfg.layouts) {
        auto s = summarize_layout(results, kind);
        CHECK(s.cases == 2);
        CHECK(s.present_total == 2);   // qft_4 present twice
        CHECK(s.absent_found == 0);    // outadd_3 must never appear
    }
}
