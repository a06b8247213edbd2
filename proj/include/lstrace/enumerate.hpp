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
#include <optional>
#include <stdexcept>
#include <vector>

#include "lstrace/recover.hpp"

namespace lstrace {

/// One valid cover of an ambiguous component: vertex-disjoint endpoint-to-
/// endpoint paths that together use every active tile. Paths are stored
/// with the lexicographically smaller endpoint first and sorted.
struct PathSolution {
    std::vector<std::vector<TileCoord>> paths;

    bool operator==(const PathSolution&) const = default;
    auto operator<=>(const PathSolution&) const = default;
};

struct EnumerationStats {
    std::uint64_t expansions = 0;
    double elapsed_ms = 0.0;
    bool complete = true;
};

struct EnumerationResult {
    std::vector<PathSolution> solutions;
    EnumerationStats stats;
};

struct EnumerationBudget {
    std::optional<double> time_limit_ms;
    std::optional<std::uint64_t> max_expansions;
};

/// A component recovered an odd number of logical qubit endpoints; no
/// pairing exists and the trace entry cannot be resolved.
class OddEndpointError : public std::runtime_error {
public:
    explicit OddEndpointError(int count)
        : std::runtime_error("odd number of recovered qubit endpoints: " + std::to_string(count)),
          count_(count) {}
    int count() const { return count_; }

private:
    int count_;
};

namespace detail {

inline std::vector<TileCoord> canonical_path(std::vector<TileCoord> p) {
    if (p.back() < p.front()) std::reverse(p.begin(), p.end());
    return p;
}

class PathEnumerator {
public:
    PathEnumerator(const Component& comp, const EnumerationBudget& budget)
        : budget_(budget), t0_(std::chrono::steady_clock::now()) {
        tiles_ = comp.tiles;  // row-major sorted
        n_ = static_cast<int>(tiles_.size());
        auto local = [&](TileCoord t) {
            auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
            return it != tiles_.end() && *it == t ? static_cast<int>(it - tiles_.begin()) : -1;
        };
        adj_.assign(n_, {});
        for (int i = 0; i < n_; ++i)
            for (auto d : kNeighborDeltas) {
                int j = local({tiles_[i].row + d.row, tiles_[i].col + d.col});
                if (j >= 0) adj_[i].push_back(j);
            }
        is_ep_.assign(n_, 0);
        for (auto e : comp.endpoints) is_ep_[local(e)] = 1;
        used_.assign(n_, 0);
        for (int i = 0; i < n_; ++i)
            if (is_ep_[i])
                eps_.push_back(i);
            else
                ++wires_left_;
        unmatched_ = static_cast<int>(eps_.size());
    }

    EnumerationResult run() {
        EnumerationResult out;
        if (!eps_.empty()) {
            if (unmatched_ % 2 != 0) throw OddEndpointError(unmatched_);
            search();
        }
        std::sort(solutions_.begin(), solutions_.end());
        out.solutions = std::move(solutions_);
        out.stats.expansions = expansions_;
        out.stats.complete = !aborted_;
        out.stats.elapsed_ms = elapsed_ms();
        return out;
    }

private:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

    bool tick() {
        if (aborted_) return false;
        ++expansions_;
        if (budget_.max_expansions && expansions_ > *budget_.max_expansions) aborted_ = true;
        if (budget_.time_limit_ms && (expansions_ & 1023u) == 0 &&
            elapsed_ms() > *budget_.time_limit_ms)
            aborted_ = true;
        return !aborted_;
    }

    // Every region of unconsumed tiles must hold an even, nonzero-if-wired
    // number of unmatched endpoints; otherwise the partial cover is dead.
    bool regions_feasible() {
        scratch_.assign(n_, 0);
        for (int s = 0; s < n_; ++s) {
            if (scratch_[s] || used_[s]) continue;
            int eps = 0, wires = 0;
            stack_.clear();
            stack_.push_back(s);
            scratch_[s] = 1;
            while (!stack_.empty()) {
                int u = stack_.back();
                stack_.pop_back();
                if (is_ep_[u])
                    ++eps;
                else
                    ++wires;
                for (int v : adj_[u])
                    if (!scratch_[v] && !used_[v]) {
                        scratch_[v] = 1;
                        stack_.push_back(v);
                    }
            }
            if (eps % 2 != 0) return false;
            if (eps == 0 && wires > 0) return false;
        }
        return true;
    }

    void record_solution() {
        PathSolution sol;
        for (const auto& p : path_stack_) {
            std::vector<TileCoord> path;
            path.reserve(p.size());
            for (int i : p) path.push_back(tiles_[i]);
            sol.paths.push_back(canonical_path(std::move(path)));
        }
        std::sort(sol.paths.begin(), sol.paths.end());
        solutions_.push_back(std::move(sol));
    }

    void search() {
        if (!tick()) return;
        if (unmatched_ == 0) {
            if (wires_left_ == 0) record_solution();
            return;
        }
        int e = -1;
        for (int i : eps_)
            if (!used_[i]) { e = i; break; }
        used_[e] = 1;
        --unmatched_;
        cur_path_.clear();
        cur_path_.push_back(e);
        extend(e);
        ++unmatched_;
        used_[e] = 0;
    }

    void extend(int tip) {
        if (!tick()) return;
        for (int v : adj_[tip]) {
            if (is_ep_[v]) {
                if (used_[v]) continue;
                used_[v] = 1;
                --unmatched_;
                cur_path_.push_back(v);
                path_stack_.push_back(cur_path_);
                std::vector<int> saved = std::move(cur_path_);
                if (regions_feasible()) search();
                cur_path_ = std::move(saved);
                path_stack_.pop_back();
                cur_path_.pop_back();
                ++unmatched_;
                used_[v] = 0;
            } else if (!used_[v]) {
                used_[v] = 1;
                --wires_left_;
                cur_path_.push_back(v);
                extend(v);
                cur_path_.pop_back();
                ++wires_left_;
                used_[v] = 0;
            }
        }
    }

    EnumerationBudget budget_;
    std::chrono::steady_clock::time_point t0_;
    std::vector<TileCoord> tiles_;
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> is_ep_;
    std::vector<std::uint8_t> used_;
    std::vector<int> eps_;
    int unmatched_ = 0;
    int wires_left_ = 0;
    std::vector<int> cur_path_;
    std::vector<std::vector<int>> path_stack_;
    std::vector<PathSolution> solutions_;
    std::vector<std::uint8_t> scratch_;
    std::vector<int> stack_;
    std::uint64_t expansions_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Enumerates every valid, non-overlapping path solution of an ambiguous
/// component by backtracking DFS. Complete unless the budget is exhausted
/// (stats.complete == false). Output order is deterministic: solutions are
/// sorted lexicographically over canonical paths.
///
/// Throws OddEndpointError when the component holds an odd number of
/// endpoints; components with no endpoints yield an empty solution list.
inline EnumerationResult enumerate_solutions(const Component& comp,
                                             const EnumerationBudget& budget = {}) {
    return detail::PathEnumerator(comp, budget).run();
}

}  // namespace lstrace
