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
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lstrace/gate_dag.hpp"

namespace lstrace {

enum class MatchMode { FirstMatch, CountAll };
enum class MatchStatus { Found, NotFound, Timeout };

inline const char* to_string(MatchStatus s) {
    switch (s) {
        case MatchStatus::Found: return "found";
        case MatchStatus::NotFound: return "not_found";
        case MatchStatus::Timeout: return "timeout";
    }
    return "?";
}

/// Subgraph monomorphism query: find an injective map of pattern nodes
/// into target nodes preserving every pattern edge (extra target edges are
/// allowed). Node compatibility is structural unless node_compat is set.
struct MatchQuery {
    const GateDag* pattern = nullptr;
    const GateDag* target = nullptr;
    std::optional<double> timeout_ms;
    MatchMode mode = MatchMode::FirstMatch;
    std::function<bool(const GateNode&, const GateNode&)> node_compat;
};

struct MatchResult {
    MatchStatus status = MatchStatus::NotFound;
    std::vector<int> mapping;                    // pattern node -> target node
    std::vector<std::vector<int>> all_mappings;  // CountAll mode
    double elapsed_ms = 0.0;
    std::uint64_t states = 0;
};

/// Independent post-hoc check that a mapping is a monomorphism.
inline bool verify_mapping(const GateDag& pattern, const GateDag& target,
                           const std::vector<int>& mapping) {
    if (mapping.size() != pattern.nodes.size()) return false;
    std::vector<std::uint8_t> used(target.nodes.size(), 0);
    for (int t : mapping) {
        if (t < 0 || t >= target.n_nodes() || used[t]) return false;
        used[t] = 1;
    }
    for (auto [u, v] : pattern.edges)
        if (!target.has_edge(mapping[u], mapping[v])) return false;
    return true;
}

namespace detail {

class VfMatcher {
public:
    VfMatcher(const MatchQuery& q) : q_(q), p_(*q.pattern), t_(*q.target) {
        build_static();
    }

    MatchResult run() {
        MatchResult out;
        t0_ = std::chrono::steady_clock::now();
        if (q_.timeout_ms && *q_.timeout_ms <= 0.0) {
            out.status = MatchStatus::Timeout;
            return out;
        }
        if (p_.n_nodes() > 0 && p_.n_nodes() <= t_.n_nodes()) {
            map_.assign(p_.n_nodes(), -1);
            used_.assign(t_.n_nodes(), 0);
            search(0);
        } else if (p_.n_nodes() == 0) {
            found_ = true;  // empty pattern embeds trivially
        }
        out.states = states_;
        out.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
                .count();
        if (timed_out_)
            out.status = MatchStatus::Timeout;
        else if (found_)
            out.status = MatchStatus::Found;
        else
            out.status = MatchStatus::NotFound;
        out.mapping = std::move(first_mapping_);
        out.all_mappings = std::move(all_);
        return out;
    }

private:
    // degree(u) as (in, out, neighbor total-degree sequence, descending)
    struct NodeSig {
        int in = 0;
        int out = 0;
        std::vector<int> nbr_degs;
    };

    static std::vector<NodeSig> signatures(const GateDag& g) {
        std::vector<NodeSig> sig(g.nodes.size());
        for (int u = 0; u < g.n_nodes(); ++u) {
            sig[u].in = static_cast<int>(g.in_adj[u].size());
            sig[u].out = static_cast<int>(g.out_adj[u].size());
        }
        for (int u = 0; u < g.n_nodes(); ++u) {
            for (int v : g.out_adj[u]) sig[u].nbr_degs.push_back(sig[v].in + sig[v].out);
            for (int v : g.in_adj[u]) sig[u].nbr_degs.push_back(sig[v].in + sig[v].out);
            std::sort(sig[u].nbr_degs.begin(), sig[u].nbr_degs.end(), std::greater<>());
        }
        return sig;
    }

    void build_static() {
        psig_ = signatures(p_);
        tsig_ = signatures(t_);
        // Static pattern order: most-connected-to-prefix first, seeded by the
        // highest-degree node.
        const int n = p_.n_nodes();
        std::vector<std::uint8_t> placed(n, 0);
        std::vector<int> link_count(n, 0);
        order_.reserve(n);
        for (int step = 0; step < n; ++step) {
            int best = -1;
            for (int u = 0; u < n; ++u) {
                if (placed[u]) continue;
                if (best < 0) { best = u; continue; }
                int du = psig_[u].in + psig_[u].out, db = psig_[best].in + psig_[best].out;
                if (link_count[u] > link_count[best] ||
                    (link_count[u] == link_count[best] && du > db))
                    best = u;
            }
            placed[best] = 1;
            order_.push_back(best);
            for (int v : p_.out_adj[best]) ++link_count[v];
            for (int v : p_.in_adj[best]) ++link_count[v];
        }
        // For each order position, a matched pattern neighbor to anchor the
        // candidate set (-1 for the first node of a component).
        anchor_.assign(n, {-1, false});
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[order_[i]] = i;
        for (int i = 0; i < n; ++i) {
            int u = order_[i];
            for (int v : p_.in_adj[u])
                if (pos[v] < i && anchor_[i].first < 0) anchor_[i] = {v, false};  // v -> u
            for (int v : p_.out_adj[u])
                if (pos[v] < i && anchor_[i].first < 0) anchor_[i] = {v, true};  // u -> v
        }
    }

    bool compatible(int pu, int tu) const {
        const auto& ps = psig_[pu];
        const auto& ts = tsig_[tu];
        if (ps.in > ts.in || ps.out > ts.out) return false;
        if (ps.nbr_degs.size() > ts.nbr_degs.size()) return false;
        for (std::size_t i = 0; i < ps.nbr_degs.size(); ++i)
            if (ps.nbr_degs[i] > ts.nbr_degs[i]) return false;
        if (q_.node_compat && !q_.node_compat(p_.nodes[pu], t_.nodes[tu])) return false;
        return true;
    }

    bool consistent(int pu, int tu) const {
        for (int v : p_.in_adj[pu])
            if (map_[v] >= 0 && !t_.has_edge(map_[v], tu)) return false;
        for (int v : p_.out_adj[pu])
            if (map_[v] >= 0 && !t_.has_edge(tu, map_[v])) return false;
        return true;
    }

    bool tick() {
        ++states_;
        if ((states_ & 1023u) == 0 && q_.timeout_ms) {
            double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
                    .count();
            if (ms > *q_.timeout_ms) timed_out_ = true;
        }
        return !timed_out_;
    }

    // Returns true when the search should stop (first match found or abort).
    bool search(int depth) {
        if (depth == p_.n_nodes()) {
            found_ = true;
            if (first_mapping_.empty()) first_mapping_ = map_;
            if (q_.mode == MatchMode::CountAll) {
                all_.push_back(map_);
                return false;
            }
            return true;
        }
        const int pu = order_[depth];
        auto [apat, out_dir] = anchor_[depth];
        auto try_candidate = [&](int tu) {
            if (!tick()) return true;
            if (used_[tu] || !compatible(pu, tu) || !consistent(pu, tu)) return false;
            map_[pu] = tu;
            used_[tu] = 1;
            bool stop = search(depth + 1);
            used_[tu] = 0;
            map_[pu] = -1;
            return stop || timed_out_;
        };
        if (apat >= 0) {
            int anchor_t = map_[apat];
            const auto& cands = out_dir ? t_.in_adj[anchor_t] : t_.out_adj[anchor_t];
            for (int tu : cands)
                if (try_candidate(tu)) return true;
        } else {
            for (int tu = 0; tu < t_.n_nodes(); ++tu)
                if (try_candidate(tu)) return true;
        }
        return false;
    }

    const MatchQuery& q_;
    const GateDag& p_;
    const GateDag& t_;
    std::vector<NodeSig> psig_, tsig_;
    std::vector<int> order_;
    std::vector<std::pair<int, bool>> anchor_;
    std::vector<int> map_;
    std::vector<std::uint8_t> used_;
    std::vector<int> first_mapping_;
    std::vector<std::vector<int>> all_;
    std::chrono::steady_clock::time_point t0_;
    std::uint64_t states_ = 0;
    bool found_ = false;
    bool timed_out_ = false;
};

}  // namespace detail

/// VF2-family state-space search for a subgraph monomorphism of the pattern
/// inside the target. First-match mode stops at the first embedding;
/// count-all enumerates every embedding. The timeout is checked every 1024
/// visited states.
inline MatchResult find_subgraph(const MatchQuery& query) {
    return detail::VfMatcher(query).run();
}

/// Per-subroutine detection report entry.
struct SubroutineReport {
    std::string name;
    MatchStatus status = MatchStatus::NotFound;
    double elapsed_ms = 0.0;
    std::vector<int> mapping;
};

/// Runs find_subgraph for every named pattern against one target.
inline std::vector<SubroutineReport> detect_subroutines(
    const std::vector<std::pair<std::string, const GateDag*>>& library, const GateDag& target,
    std::optional<double> timeout_ms_per_pattern = {}) {
    std::vector<SubroutineReport> reports;
    reports.reserve(library.size());
    for (const auto& [name, pattern] : library) {
        MatchQuery q;
        q.pattern = pattern;
        q.target = &target;
        q.timeout_ms = timeout_ms_per_pattern;
        q.mode = MatchMode::FirstMatch;
        MatchResult r = find_subgraph(q);
        reports.push_back({name, r.status, r.elapsed_ms, std::move(r.mapping)});
    }
    return reports;
}

}  // namespace lstrace
