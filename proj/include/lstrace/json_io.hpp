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

#include <string>
#include <vector>

#include <json.hpp>

#include "lstrace/enumerate.hpp"
#include "lstrace/gate_dag.hpp"
#include "lstrace/layout.hpp"
#include "lstrace/match.hpp"
#include "lstrace/recover.hpp"
#include "lstrace/reconstruct.hpp"
#include "lstrace/synth.hpp"
#include "lstrace/trace.hpp"

namespace lstrace {

using json = nlohmann::json;

inline json tile_to_json(TileCoord t) { return json::array({t.row, t.col}); }

inline TileCoord tile_from_json(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

// ---- Layout ----------------------------------------------------------

inline json layout_to_json(const Layout& l) {
    json j;
    j["kind"] = to_string(l.kind);
    j["rows"] = l.rows;
    j["cols"] = l.cols;
    json tiles = json::array();
    for (auto t : l.qubit_tiles) tiles.push_back(tile_to_json(t));
    j["qubit_tiles"] = tiles;  // routing tiles are implicit
    return j;
}

inline Layout layout_from_json(const json& j) {
    Layout l;
    auto kind = layout_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown layout kind");
    l.kind = *kind;
    l.rows = j.at("rows").get<int>();
    l.cols = j.at("cols").get<int>();
    for (const auto& t : j.at("qubit_tiles")) l.qubit_tiles.push_back(tile_from_json(t));
    l.finalize();
    return l;
}

// ---- Trace -----------------------------------------------------------

inline json trace_to_json(const Trace& t) {
    json j;
    j["level"] = static_cast<int>(t.level);
    j["rows"] = t.rows;
    j["cols"] = t.cols;
    json frames = json::array();
    for (const auto& f : t.frames) frames.push_back(json(f));
    j["frames"] = frames;
    return j;
}

inline Trace trace_from_json(const json& j) {
    Trace t;
    int level = j.at("level").get<int>();
    if (level < 1 || level > 3) throw std::invalid_argument("trace level must be 1, 2 or 3");
    t.level = static_cast<TraceLevel>(level);
    t.rows = j.at("rows").get<int>();
    t.cols = j.at("cols").get<int>();
    if (t.rows <= 0 || t.cols <= 0) throw std::invalid_argument("trace has empty grid");
    const std::uint8_t max_cell =
        t.level == TraceLevel::L1 ? 1 : (t.level == TraceLevel::L2 ? 31 : 127);
    for (const auto& f : j.at("frames")) {
        auto frame = f.get<std::vector<std::uint8_t>>();
        if (frame.size() != static_cast<std::size_t>(t.rows) * t.cols)
            throw std::invalid_argument("frame size does not match rows*cols");
        for (auto c : frame)
            if (c > max_cell)
                throw std::invalid_argument("cell value " + std::to_string(c) +
                                            " out of range for L" +
                                            std::to_string(static_cast<int>(t.level)));
        t.frames.push_back(std::move(frame));
    }
    return t;
}

// ---- Recovery sidecar -------------------------------------------------

inline json components_to_json(const RecoveryResult& r) {
    json out = json::array();
    for (std::size_t f = 0; f < r.frames.size(); ++f) {
        for (const auto& c : r.frames[f].components) {
            json jc;
            jc["frame"] = f;
            json tiles = json::array();
            for (auto t : c.tiles) tiles.push_back(tile_to_json(t));
            jc["tiles"] = tiles;
            json eps = json::array();
            for (auto t : c.endpoints) eps.push_back(tile_to_json(t));
            jc["endpoints"] = eps;
            jc["status"] = c.status == Component::Status::KnownPath ? "known" : "ambiguous";
            out.push_back(std::move(jc));
        }
    }
    return out;
}

inline json path_to_json(const std::vector<TileCoord>& p) {
    json j = json::array();
    for (auto t : p) j.push_back(tile_to_json(t));
    return j;
}

/// Per-frame solution export for ambiguous components. Timing is kept out
/// of this file so reruns are byte-identical.
inline json solutions_to_json(const RecoveryResult& r, const SolutionTable& table) {
    json out = json::array();
    for (std::size_t f = 0; f < r.frames.size(); ++f) {
        for (std::size_t ci = 0; ci < r.frames[f].components.size(); ++ci) {
            if (r.frames[f].components[ci].status != Component::Status::Ambiguous) continue;
            const EnumerationResult& res = table[f][ci];
            json jc;
            jc["frame"] = f;
            jc["component_id"] = ci;
            json sols = json::array();
            for (const auto& sol : res.solutions) {
                json paths = json::array();
                for (const auto& p : sol.paths) paths.push_back(path_to_json(p));
                sols.push_back(std::move(paths));
            }
            jc["solutions"] = sols;
            jc["stats"] = {{"expansions", res.stats.expansions},
                           {"complete", res.stats.complete}};
            out.push_back(std::move(jc));
        }
    }
    return out;
}

// ---- Gate DAG ----------------------------------------------------------

inline json dag_to_json(const GateDag& dag) {
    json j;
    json nodes = json::array();
    for (const auto& n : dag.nodes) {
        json jn;
        jn["id"] = n.id;
        jn["timestep"] = n.timestep;
        jn["tiles"] = json::array({tile_to_json(n.a), tile_to_json(n.b)});
        if (n.alt_group)
            jn["alt_group"] =
                json::array({n.alt_group->frame, n.alt_group->component, n.alt_group->solution});
        else
            jn["alt_group"] = nullptr;
        nodes.push_back(std::move(jn));
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (auto [u, v] : dag.edges) edges.push_back(json::array({u, v}));
    j["edges"] = edges;
    return j;
}

inline GateDag dag_from_json(const json& j) {
    GateDag dag;
    for (const auto& jn : j.at("nodes")) {
        GateNode n;
        n.timestep = jn.at("timestep").get<int>();
        n.a = tile_from_json(jn.at("tiles").at(0));
        n.b = tile_from_json(jn.at("tiles").at(1));
        if (!jn.at("alt_group").is_null()) {
            const auto& ag = jn.at("alt_group");
            n.alt_group = AltGroup{ag.at(0).get<int>(), ag.at(1).get<int>(), ag.at(2).get<int>()};
            n.is_ambiguous = true;
        }
        dag.add_node(n);
    }
    for (const auto& je : j.at("edges")) {
        int u = je.at(0).get<int>(), v = je.at(1).get<int>();
        if (u < 0 || v < 0 || u >= dag.n_nodes() || v >= dag.n_nodes())
            throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") references a missing node");
        dag.add_edge(u, v);
    }
    dag.finalize();
    return dag;
}

// ---- Benchmark composition ---------------------------------------------

inline json composition_to_json(const CompositionRecord& r) {
    json j;
    j["total_qubits"] = r.total_qubits;
    json cs = json::array();
    for (const auto& c : r.constituents) {
        cs.push_back({{"name", c.name},
                      {"base", c.base},
                      {"count", c.count},
                      {"perm", c.perm},
                      {"seed", c.seed}});
    }
    j["constituents"] = cs;
    return j;
}

inline CompositionRecord composition_from_json(const json& j) {
    CompositionRecord r;
    r.total_qubits = j.at("total_qubits").get<int>();
    for (const auto& jc : j.at("constituents")) {
        Constituent c;
        c.name = jc.at("name").get<std::string>();
        c.base = jc.at("base").get<int>();
        c.count = jc.at("count").get<int>();
        c.perm = jc.at("perm").get<std::vector<int>>();
        c.seed = jc.at("seed").get<std::uint64_t>();
        r.constituents.push_back(std::move(c));
    }
    return r;
}

// ---- Match report --------------------------------------------------------

inline json match_report_to_json(const std::vector<SubroutineReport>& reports,
                                 bool include_timing = true) {
    json out = json::array();
    for (const auto& r : reports) {
        json jr;
        jr["subroutine"] = r.name;
        jr["status"] = to_string(r.status);
        if (include_timing) jr["elapsed_ms"] = r.elapsed_ms;
        if (r.status == MatchStatus::Found) {
            json m = json::array();
            for (std::size_t p = 0; p < r.mapping.size(); ++p)
                m.push_back(json::array({p, r.mapping[p]}));
            jr["mapping"] = m;
        }
        out.push_back(std::move(jr));
    }
    return out;
}

}  // namespace lstrace
