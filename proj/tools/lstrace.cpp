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

// Command-line driver: trace generation, L1 recovery, subroutine matching,
// benchmark synthesis and the full evaluation matrix.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "lstrace/io_util.hpp"
#include "lstrace/lstrace.hpp"

namespace fs = std::filesystem;
using namespace lstrace;

namespace {

constexpr int kExitOddEndpoint = 2;
constexpr int kExitUnresolvable = 3;

std::vector<LayoutKind> parse_layouts(const std::string& spec) {
    std::vector<LayoutKind> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto k = layout_kind_from_string(item);
        if (!k) throw CLI::ValidationError("--layouts", "unknown layout '" + item + "'");
        out.push_back(*k);
    }
    if (out.empty()) throw CLI::ValidationError("--layouts", "no layouts given");
    return out;
}

json metrics_json(const RecoverOutcome& rec) {
    json m;
    m["status"] = to_string(rec.status);
    m["failed_frame"] = rec.failed_frame;
    m["ambiguity_pct"] = rec.ambiguity_pct;
    m["ambiguous_endpoint_count"] = rec.ambiguous_endpoint_count;
    m["endpoint_pairing_success"] = rec.endpoint_pairing_success();
    m["dfs_total_ms"] = rec.dfs_total_ms;
    m["dfs_per_frame_ms"] = rec.dfs_per_frame_ms;
    m["dfs_complete"] = rec.dfs_complete;
    return m;
}

json case_json(const CaseResult& r) {
    json c;
    c["recipe"] = r.recipe;
    c["perturbation"] = r.perturbation;
    c["seed"] = r.seed;
    c["layout"] = to_string(r.layout);
    c["qubits"] = r.total_qubits;
    c["gates"] = r.n_gates;
    c["frames"] = r.n_frames;
    c["status"] = to_string(r.recover_status);
    c["failed_frame"] = r.failed_frame;
    c["ambiguity_pct"] = r.ambiguity_pct;
    c["ambiguous_endpoints"] = r.ambiguous_endpoints;
    c["dfs_total_ms"] = r.dfs_total_ms;
    c["dfs_complete"] = r.dfs_complete;
    c["dag_nodes"] = r.dag_nodes;
    c["dag_edges"] = r.dag_edges;
    c["truth_embedded"] = r.truth_embedded;
    if (!r.error.empty()) c["error"] = r.error;
    json ms = json::array();
    for (const auto& m : r.matches)
        ms.push_back({{"subroutine", m.subroutine},
                      {"present", m.present},
                      {"status", to_string(m.status)},
                      {"elapsed_ms", m.elapsed_ms}});
    c["matches"] = ms;
    return c;
}

int cmd_trace(const std::string& qasm_path, const std::string& layout_name, int capacity,
              int level, const std::string& out_dir, std::optional<std::uint64_t> shuffle_seed) {
    LogicalCircuit circuit = parse_qasm(read_file(qasm_path));
    auto kind = layout_kind_from_string(layout_name);
    if (!kind) throw std::runtime_error("unknown layout '" + layout_name + "'");
    int n = circuit.n_qubits;
    if (capacity > 0 && capacity < n)
        throw std::runtime_error("circuit needs " + std::to_string(n) +
                                 " qubits but --capacity is " + std::to_string(capacity));
    if (capacity > 0) n = capacity;
    Layout layout = build_layout(*kind, std::max(n, 2));

    ScheduleOptions opts;
    opts.shuffle_seed = shuffle_seed;
    ScheduleResult sched = schedule_and_route(circuit, layout, opts);

    fs::path out(out_dir);
    write_file(out / "layout.json", layout_to_json(layout).dump(2) + "\n");
    int written = 0;
    auto emit = [&](TraceLevel lvl) {
        std::string name = "trace_l" + std::to_string(static_cast<int>(lvl)) + ".json";
        write_file(out / name, trace_to_json(downgrade(sched.trace, lvl)).dump() + "\n");
        ++written;
    };
    if (level == 0) {  // default: every level
        emit(TraceLevel::L3);
        emit(TraceLevel::L2);
        emit(TraceLevel::L1);
    } else {
        emit(static_cast<TraceLevel>(level));
    }
    std::cout << "wrote " << written << " trace file(s) to " << out.string() << " ("
              << sched.trace.n_frames() << " frames, " << layout.rows << "x" << layout.cols
              << " grid)\n";
    return 0;
}

int cmd_recover(const std::string& trace_path, const std::string& out_dir,
                double dfs_timeout_secs) {
    Trace l1 = trace_from_json(json::parse(read_file(trace_path)));
    if (l1.level != TraceLevel::L1) {
        if (l1.level == TraceLevel::L3)
            l1 = downgrade(l1, TraceLevel::L1);
        else
            throw std::runtime_error("recover expects an L1 (or L3) trace");
    }
    EnumerationBudget budget;
    if (dfs_timeout_secs > 0) budget.time_limit_ms = dfs_timeout_secs * 1000.0;
    RecoverOutcome rec = recover_pipeline(l1, budget);

    fs::path out(out_dir);
    write_file(out / "recovered_l3.json", trace_to_json(recovered_trace(rec.recovery)).dump() + "\n");
    write_file(out / "components.json", components_to_json(rec.recovery).dump() + "\n");
    write_file(out / "solutions.json",
               solutions_to_json(rec.recovery, rec.solutions).dump() + "\n");
    write_file(out / "metrics.json", metrics_json(rec).dump(2) + "\n");
    if (rec.status != RecoverStatus::OddEndpoint)
        write_file(out / "dag.json", dag_to_json(rec.recon.dag).dump() + "\n");

    if (rec.status == RecoverStatus::OddEndpoint) {
        std::cerr << "odd ambiguity error: odd number of qubit endpoints in frame "
                  << rec.failed_frame << "\n";
        return kExitOddEndpoint;
    }
    if (rec.status == RecoverStatus::Unresolvable) {
        std::cerr << "unresolvable frame " << rec.failed_frame
                  << ": an ambiguous component admits no valid path solution\n";
        return kExitUnresolvable;
    }
    std::cout << "recovered " << rec.recovery.frames.size() << " frames, "
              << rec.recon.dag.n_nodes() << " DAG nodes, ambiguity " << rec.ambiguity_pct
              << "%\n";
    return 0;
}

int cmd_match(const std::string& dag_path, const std::string& library_dir, double timeout_secs,
              const std::string& out_path) {
    GateDag target = dag_from_json(json::parse(read_file(dag_path)));
    std::vector<std::pair<std::string, GateDag>> patterns;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(library_dir))
        if (e.path().extension() == ".qasm") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        patterns.emplace_back(f.stem().string(), circuit_to_dag(parse_qasm(read_file(f))));

    std::vector<std::pair<std::string, const GateDag*>> library;
    for (auto& [name, dag] : patterns) library.emplace_back(name, &dag);
    auto reports = detect_subroutines(library, target, timeout_secs * 1000.0);

    json out = match_report_to_json(reports);
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_file(out_path, out.dump(2) + "\n");
    for (const auto& r : reports)
        std::cout << r.name << ": " << to_string(r.status) << " (" << r.elapsed_ms << " ms)\n";
    return 0;
}

int cmd_synth(const std::vector<std::string>& files, std::uint64_t seed, int count,
              const std::string& out_dir) {
    std::vector<SubroutineSource> sources;
    for (const auto& f : files) sources.push_back({fs::path(f).stem().string(), read_file(f)});
    fs::path out(out_dir);
    for (int i = 0; i < count; ++i) {
        auto [qasm, record] = synthesize(sources, seed + i);
        std::string stem = "synth_" + std::to_string(seed + i);
        write_file(out / (stem + ".qasm"), qasm);
        write_file(out / (stem + ".composition.json"), composition_to_json(record).dump(2) + "\n");
        std::cout << "wrote " << (out / stem).string() << ".{qasm,composition.json} ("
                  << record.total_qubits << " qubits)\n";
    }
    return 0;
}

std::string csv_safe(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

void write_csvs(const std::vector<CaseResult>& results, const fs::path& out) {
    std::ostringstream cases;
    cases << "recipe,perturbation,seed,layout,qubits,gates,frames,status,ambiguity_pct,"
             "ambiguous_endpoints,dfs_total_ms,dfs_complete,dag_nodes,dag_edges,truth_embedded,"
             "error\n";
    std::ostringstream matches;
    matches << "recipe,perturbation,layout,subroutine,present,status,elapsed_ms\n";
    for (const auto& r : results) {
        cases << r.recipe << ',' << r.perturbation << ',' << r.seed << ',' << to_string(r.layout)
              << ',' << r.total_qubits << ',' << r.n_gates << ',' << r.n_frames << ','
              << to_string(r.recover_status) << ',' << r.ambiguity_pct << ','
              << r.ambiguous_endpoints << ',' << r.dfs_total_ms << ',' << r.dfs_complete << ','
              << r.dag_nodes << ',' << r.dag_edges << ',' << r.truth_embedded << ','
              << csv_safe(r.error) << '\n';
        for (const auto& m : r.matches)
            matches << r.recipe << ',' << r.perturbation << ',' << to_string(r.layout) << ','
                    << m.subroutine << ',' << m.present << ',' << to_string(m.status) << ','
                    << m.elapsed_ms << '\n';
    }
    write_file(out / "cases.csv", cases.str());
    write_file(out / "matches.csv", matches.str());
}

void write_plot_csvs(const json& agg, const fs::path& out);

int cmd_bench(const std::string& recipes_path, int perturbations, std::uint64_t seed,
              const std::string& layouts, double timeout_secs, double dfs_timeout_secs, int jobs,
              const std::string& out_dir) {
    BenchConfig cfg = load_recipes(recipes_path);
    cfg.perturbations = perturbations;
    cfg.base_seed = seed;
    cfg.layouts = parse_layouts(layouts);
    cfg.match_timeout_ms = timeout_secs * 1000.0;
    if (dfs_timeout_secs > 0) cfg.dfs_budget.time_limit_ms = dfs_timeout_secs * 1000.0;
    cfg.jobs = jobs;

    auto results = run_bench(cfg);

    fs::path out(out_dir);
    json agg;
    agg["config"] = {{"recipes_file", recipes_path},
                     {"perturbations", perturbations},
                     {"base_seed", seed},
                     {"layouts", layouts},
                     {"match_timeout_secs", timeout_secs}};
    json jcases = json::array();
    for (const auto& r : results) jcases.push_back(case_json(r));
    agg["cases"] = jcases;
    json summary;
    for (auto kind : cfg.layouts) {
        LayoutSummary s = summarize_layout(results, kind);
        summary[to_string(kind)] = {{"cases", s.cases},
                                    {"pairing_success", s.pairing_success},
                                    {"pairing_success_rate_pct", s.pairing_success_rate()},
                                    {"truth_embedded", s.embedded},
                                    {"present_total", s.present_total},
                                    {"present_found", s.present_found},
                                    {"detection_rate_pct", s.detection_rate()},
                                    {"false_positives", s.absent_found},
                                    {"match_timeouts", s.match_timeouts}};
    }
    agg["summary"] = summary;
    write_file(out / "aggregate.json", agg.dump(2) + "\n");
    write_csvs(results, out);
    write_plot_csvs(agg, out);
    std::cout << summary.dump(2) << "\n";
    std::cout << "wrote " << (out / "aggregate.json").string() << ", cases.csv, matches.csv\n";
    return 0;
}

void write_plot_csvs(const json& agg, const fs::path& out) {
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> heat;  // (recipe,layout)
    std::ostringstream amb, dfsbox, scatter;
    amb << "recipe,layout,ambiguity_pct\n";
    dfsbox << "recipe,layout,dfs_total_ms\n";
    scatter << "layout,ambiguous_endpoints,dfs_total_ms\n";
    std::map<std::string, std::vector<double>> found_times;
    std::map<std::string, std::array<int, 3>> det;  // layout -> {present, found, absent_found}

    for (const auto& c : agg.at("cases")) {
        const std::string recipe = c.at("recipe"), layout = c.at("layout");
        const std::string status = c.at("status");
        auto& h = heat[{recipe, layout}];
        ++h.first;
        if (status != "odd_endpoint") ++h.second;
        amb << recipe << ',' << layout << ',' << c.at("ambiguity_pct").get<double>() << '\n';
        if (status == "ok")
            dfsbox << recipe << ',' << layout << ',' << c.at("dfs_total_ms").get<double>() << '\n';
        scatter << layout << ',' << c.at("ambiguous_endpoints").get<int>() << ','
                << c.at("dfs_total_ms").get<double>() << '\n';
        for (const auto& m : c.at("matches")) {
            const bool present = m.at("present").get<bool>();
            const bool found = m.at("status").get<std::string>() == "found";
            if (present) {
                ++det[layout][0];
                if (found) {
                    ++det[layout][1];
                    found_times[layout].push_back(m.at("elapsed_ms").get<double>());
                }
            } else if (found) {
                ++det[layout][2];
            }
        }
    }

    std::ostringstream heatcsv;
    heatcsv << "recipe,layout,cases,pairing_success_rate_pct\n";
    for (const auto& [key, v] : heat)
        heatcsv << key.first << ',' << key.second << ',' << v.first << ','
                << (100.0 * v.second / v.first) << '\n';

    std::ostringstream cum;
    cum << "layout,timeout_ms,cumulative_found\n";
    for (auto& [layout, times] : found_times) {
        std::sort(times.begin(), times.end());
        for (std::size_t i = 0; i < times.size(); ++i)
            cum << layout << ',' << times[i] << ',' << (i + 1) << '\n';
    }

    std::ostringstream rates;
    rates << "layout,present_total,present_found,detection_rate_pct,absent_found\n";
    for (const auto& [layout, v] : det)
        rates << layout << ',' << v[0] << ',' << v[1] << ','
              << (v[0] ? 100.0 * v[1] / v[0] : 0.0) << ',' << v[2] << '\n';

    write_file(out / "pairing_success_heatmap.csv", heatcsv.str());
    write_file(out / "ambiguity_box.csv", amb.str());
    write_file(out / "dfs_runtime_box.csv", dfsbox.str());
    write_file(out / "dfs_vs_endpoints.csv", scatter.str());
    write_file(out / "cumulative_detections.csv", cum.str());
    write_file(out / "detection_rates.csv", rates.str());
    std::cout << "wrote plot data CSVs to " << out.string() << "\n";
}

int cmd_report(const std::string& aggregate_path, const std::string& out_dir) {
    write_plot_csvs(json::parse(read_file(aggregate_path)), out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surface-code lattice-surgery access traces: generation, recovery, matching"};
    app.require_subcommand(1);

    std::string qasm_path, layout_name = "compact", out_dir = ".", trace_path, dag_path;
    std::string library_dir, out_path, recipes_path, layouts = "sparse,compact,intermediate";
    std::string aggregate_path;
    std::vector<std::string> synth_files;
    std::uint64_t seed = 1;
    int capacity = 0, count = 1, perturbations = 30, jobs = 0, level = 0;
    double timeout_secs = 3600.0, dfs_timeout_secs = 3600.0;
    std::uint64_t shuffle_seed = 0;
    bool shuffled = false;

    auto* trace = app.add_subcommand("trace", "generate L3/L2/L1 traces for a circuit");
    trace->add_option("--qasm", qasm_path, "input OpenQASM 2 file")->required();
    trace->add_option("--layout", layout_name, "sparse|compact|intermediate");
    trace->add_option("--capacity", capacity, "force layout capacity (errors if too small)");
    trace->add_option("--level", level, "emit only this trace level (1|2|3)")
        ->check(CLI::Range(1, 3));
    trace->add_option("--shuffle-seed", shuffle_seed, "randomize within-step gate order");
    trace->add_flag("--shuffled", shuffled, "enable seeded gate-order shuffling");
    trace->add_option("--out", out_dir, "output directory");

    auto* recover = app.add_subcommand("recover", "recover L3 trace + DAG from an L1 trace");
    recover->add_option("--trace", trace_path, "input L1 trace JSON")->required();
    recover->add_option("--dfs-timeout-secs", dfs_timeout_secs, "per-component DFS budget");
    recover->add_option("--out", out_dir, "output directory");

    auto* match = app.add_subcommand("match", "find library subroutines in a DAG");
    match->add_option("--dag", dag_path, "target DAG JSON")->required();
    match->add_option("--library", library_dir, "directory of pattern .qasm files")->required();
    match->add_option("--timeout-secs", timeout_secs, "per-pattern timeout");
    match->add_option("--out", out_path, "report file (stdout if omitted)");

    auto* synth = app.add_subcommand("synth", "merge subroutines into a benchmark program");
    synth->add_option("files", synth_files, "subroutine .qasm files")->required();
    synth->add_option("--seed", seed, "base seed");
    synth->add_option("--count", count, "number of perturbations");
    synth->add_option("--out", out_dir, "output directory");

    auto* bench = app.add_subcommand("bench", "run the recipes x perturbations x layouts matrix");
    bench->add_option("--recipes", recipes_path, "recipes JSON file")->required();
    bench->add_option("--perturbations", perturbations, "perturbations per recipe");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--layouts", layouts, "comma-separated layout list");
    bench->add_option("--timeout-secs", timeout_secs, "per-pattern match timeout");
    bench->add_option("--dfs-timeout-secs", dfs_timeout_secs, "per-component DFS budget");
    bench->add_option("--jobs", jobs, "worker threads (0 = all cores)");
    bench->add_option("--out", out_dir, "output directory");

    auto* report = app.add_subcommand("report", "derive plot-data CSVs from a bench aggregate");
    report->add_option("--aggregate", aggregate_path, "aggregate.json from bench")->required();
    report->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (trace->parsed())
            return cmd_trace(qasm_path, layout_name, capacity, level, out_dir,
                             shuffled || trace->count("--shuffle-seed")
                                 ? std::optional<std::uint64_t>(shuffle_seed)
                                 : std::nullopt);
        if (recover->parsed()) return cmd_recover(trace_path, out_dir, dfs_timeout_secs);
        if (match->parsed()) return cmd_match(dag_path, library_dir, timeout_secs, out_path);
        if (synth->parsed()) return cmd_synth(synth_files, seed, count, out_dir);
        if (bench->parsed())
            return cmd_bench(recipes_path, perturbations, seed, layouts, timeout_secs,
                             dfs_timeout_secs, jobs, out_dir);
        if (report->parsed()) return cmd_report(aggregate_path, out_dir);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
