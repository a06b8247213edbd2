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

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lstrace/enumerate.hpp"
#include "lstrace/match.hpp"
#include "lstrace/oracle.hpp"
#include "lstrace/qasm.hpp"
#include "lstrace/reconstruct.hpp"
#include "lstrace/recover.hpp"
#include "lstrace/route.hpp"
#include "lstrace/synth.hpp"
#include "lstrace/trace.hpp"

namespace lstrace {

enum class RecoverStatus { Ok, OddEndpoint, Unresolvable };

inline const char* to_string(RecoverStatus s) {
    switch (s) {
        case RecoverStatus::Ok: return "ok";
        case RecoverStatus::OddEndpoint: return "odd_endpoint";
        case RecoverStatus::Unresolvable: return "unresolvable";
    }
    return "?";
}

/// Full result of the L1 -> DAG recovery chain for one trace.
struct RecoverOutcome {
    RecoverStatus status = RecoverStatus::Ok;
    int failed_frame = -1;  // first odd-endpoint or unresolvable frame
    RecoveryResult recovery;
    SolutionTable solutions;
    ReconstructionResult recon;

    // metrics
    double ambiguity_pct = 0.0;
    int ambiguous_endpoint_count = 0;
    double dfs_total_ms = 0.0;
    std::vector<double> dfs_per_frame_ms;
    bool dfs_complete = true;

    bool endpoint_pairing_success() const { return status != RecoverStatus::OddEndpoint; }
};

/// Runs heuristics, path enumeration and DAG reconstruction on an L1 trace.
/// An odd endpoint count halts the chain (paper semantics); unresolvable
/// frames are reported but still produce a partial DAG.
inline RecoverOutcome recover_pipeline(const Trace& l1, const EnumerationBudget& budget = {}) {
    RecoverOutcome out;
    out.recovery = h3_recover(l1);

    int ambiguous_frames = 0;
    out.dfs_per_frame_ms.assign(out.recovery.frames.size(), 0.0);
    out.solutions.resize(out.recovery.frames.size());
    for (std::size_t f = 0; f < out.recovery.frames.size(); ++f) {
        const RecoveredFrame& frame = out.recovery.frames[f];
        out.solutions[f].resize(frame.components.size());
        if (frame.ambiguous()) ++ambiguous_frames;
        for (std::size_t ci = 0; ci < frame.components.size(); ++ci) {
            const Component& comp = frame.components[ci];
            if (comp.status != Component::Status::Ambiguous) continue;
            out.ambiguous_endpoint_count += static_cast<int>(comp.endpoints.size());
            try {
                out.solutions[f][ci] = enumerate_solutions(comp, budget);
            } catch (const OddEndpointError&) {
                out.status = RecoverStatus::OddEndpoint;
                out.failed_frame = static_cast<int>(f);
                out.ambiguity_pct =
                    100.0 * ambiguous_frames / static_cast<double>(out.recovery.frames.size());
                return out;
            }
            out.dfs_per_frame_ms[f] += out.solutions[f][ci].stats.elapsed_ms;
            out.dfs_total_ms += out.solutions[f][ci].stats.elapsed_ms;
            if (!out.solutions[f][ci].stats.complete) out.dfs_complete = false;
        }
    }
    out.ambiguity_pct =
        100.0 * ambiguous_frames / static_cast<double>(out.recovery.frames.size());

    out.recon = reconstruct_dag(out.recovery, out.solutions);
    if (!out.recon.unresolvable_frames.empty()) {
        out.status = RecoverStatus::Unresolvable;
        out.failed_frame = out.recon.unresolvable_frames.front();
    }
    return out;
}

// ---- Benchmark matrix -----------------------------------------------------

struct Recipe {
    std::string name;
    std::vector<SubroutineSource> sources;
};

struct BenchConfig {
    std::vector<Recipe> recipes;
    std::vector<SubroutineSource> library;  // patterns to match in every case
    std::vector<LayoutKind> layouts = {LayoutKind::SquareSparse, LayoutKind::Compact,
                                       LayoutKind::Intermediate};
    int perturbations = 30;
    std::uint64_t base_seed = 1;
    std::optional<double> match_timeout_ms = 3'600'000.0;  // per pattern
    EnumerationBudget dfs_budget;                          // per component
    int jobs = 0;  // 0 = hardware concurrency
};

struct CaseMatch {
    std::string subroutine;
    bool present = false;  // ground truth from the composition record
    MatchStatus status = MatchStatus::NotFound;
    double elapsed_ms = 0.0;
};

struct CaseResult {
    std::string recipe;
    int perturbation = 0;
    std::uint64_t seed = 0;
    LayoutKind layout = LayoutKind::Compact;

    int total_qubits = 0;
    int n_gates = 0;
    int n_frames = 0;
    RecoverStatus recover_status = RecoverStatus::Ok;
    int failed_frame = -1;
    double ambiguity_pct = 0.0;
    int ambiguous_endpoints = 0;
    double dfs_total_ms = 0.0;
    bool dfs_complete = true;
    int dag_nodes = 0;
    int dag_edges = 0;
    bool truth_embedded = false;
    std::vector<CaseMatch> matches;
    std::string error;  // non-empty when the case aborted unexpectedly
};

/// Runs one benchmark case end to end: synthesize, route, downgrade to L1,
/// recover, reconstruct and match the library.
inline CaseResult run_bench_case(const BenchConfig& cfg, const Recipe& recipe, int perturbation,
                                 LayoutKind kind) {
    CaseResult res;
    res.recipe = recipe.name;
    res.perturbation = perturbation;
    res.seed = cfg.base_seed + static_cast<std::uint64_t>(perturbation);
    res.layout = kind;
    try {
        auto [qasm, record] = synthesize(recipe.sources, res.seed);
        LogicalCircuit circuit = parse_qasm(qasm);
        res.total_qubits = circuit.n_qubits;
        res.n_gates = static_cast<int>(circuit.gates.size());
        Layout layout = build_layout(kind, circuit.n_qubits);
        ScheduleResult sched = schedule_and_route(circuit, layout);
        res.n_frames = sched.trace.n_frames();
        Trace l1 = downgrade(sched.trace, TraceLevel::L1);

        RecoverOutcome rec = recover_pipeline(l1, cfg.dfs_budget);
        res.recover_status = rec.status;
        res.failed_frame = rec.failed_frame;
        res.ambiguity_pct = rec.ambiguity_pct;
        res.ambiguous_endpoints = rec.ambiguous_endpoint_count;
        res.dfs_total_ms = rec.dfs_total_ms;
        res.dfs_complete = rec.dfs_complete;

        if (rec.status == RecoverStatus::OddEndpoint) {
            for (const auto& pat : cfg.library) {
                CaseMatch m;
                m.subroutine = pat.name;
                for (const auto& c : record.constituents)
                    if (c.name == pat.name) m.present = true;
                m.status = MatchStatus::NotFound;
                res.matches.push_back(std::move(m));
            }
            return res;
        }

        res.dag_nodes = rec.recon.dag.n_nodes();
        res.dag_edges = rec.recon.dag.n_edges();
        if (rec.status == RecoverStatus::Ok)
            res.truth_embedded = embed_check(placed_circuit_dag(circuit, layout), rec.recon.dag);

        for (const auto& pat : cfg.library) {
            CaseMatch m;
            m.subroutine = pat.name;
            for (const auto& c : record.constituents)
                if (c.name == pat.name) m.present = true;
            GateDag pattern = circuit_to_dag(parse_qasm(pat.qasm));
            MatchQuery q;
            q.pattern = &pattern;
            q.target = &rec.recon.dag;
            q.timeout_ms = cfg.match_timeout_ms;
            MatchResult r = find_subgraph(q);
            m.status = r.status;
            m.elapsed_ms = r.elapsed_ms;
            res.matches.push_back(std::move(m));
        }
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

/// Runs the full recipes x perturbations x layouts matrix on a worker pool.
/// Per-case failures are recorded in the result row, never thrown.
inline std::vector<CaseResult> run_bench(const BenchConfig& cfg) {
    struct Job {
        const Recipe* recipe;
        int perturbation;
        LayoutKind layout;
    };
    std::vector<Job> jobs;
    for (const auto& r : cfg.recipes)
        for (int p = 0; p < cfg.perturbations; ++p)
            for (auto l : cfg.layouts) jobs.push_back({&r, p, l});

    std::vector<CaseResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    int n_workers = cfg.jobs > 0 ? cfg.jobs
                                 : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    n_workers = std::min<int>(n_workers, static_cast<int>(jobs.size()));

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            results[i] = run_bench_case(cfg, *jobs[i].recipe, jobs[i].perturbation, jobs[i].layout);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// ---- Aggregation ----------------------------------------------------------

struct LayoutSummary {
    int cases = 0;
    int pairing_success = 0;       // no odd-endpoint halt
    int embedded = 0;              // truth DAG embedded (over ok cases)
    int present_total = 0;         // (case, constituent) pairs with truth present
    int present_found = 0;
    int absent_found = 0;          // false positives
    int match_timeouts = 0;

    double detection_rate() const {
        return present_total ? 100.0 * present_found / present_total : 0.0;
    }
    double pairing_success_rate() const {
        return cases ? 100.0 * pairing_success / cases : 0.0;
    }
};

inline LayoutSummary summarize_layout(const std::vector<CaseResult>& results, LayoutKind kind) {
    LayoutSummary s;
    for (const auto& r : results) {
        if (r.layout != kind) continue;
        ++s.cases;
        if (r.recover_status != RecoverStatus::OddEndpoint) ++s.pairing_success;
        if (r.truth_embedded) ++s.embedded;
        for (const auto& m : r.matches) {
            if (m.status == MatchStatus::Timeout) ++s.match_timeouts;
            if (m.present) {
                ++s.present_total;
                if (m.status == MatchStatus::Found) ++s.present_found;
            } else if (m.status == MatchStatus::Found) {
                ++s.absent_found;
            }
        }
    }
    return s;
}

}  // namespace lstrace
