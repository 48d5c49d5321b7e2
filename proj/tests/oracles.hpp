// Test-only oracles: independent brute-force routes for the values the
// suites freeze.  Nothing here may call the implementation paths it checks.
#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "efl/finite_space.hpp"
#include "efl/tower.hpp"

namespace oracle {

// Counts the faces of a cubical grid window by direct enumeration over the
// (position, extent) lattice: a face exists iff every ambient top cell
// containing it is active and inside the window.
inline std::size_t grid_face_count(const std::vector<int>& cell_counts,
                                   const std::vector<int>& active) {
    const std::size_t d = cell_counts.size();
    long total = 1;
    for (int n : cell_counts) total *= n;
    std::set<int> act(active.begin(), active.end());
    auto cell_active = [&](const std::vector<int>& cell) {
        long idx = 0;
        for (std::size_t a = 0; a < d; ++a) {
            if (cell[a] < 0 || cell[a] >= cell_counts[a]) return false;
            idx = idx * cell_counts[a] + cell[a];
        }
        return act.count(static_cast<int>(idx)) > 0;
    };
    // enumerate every face tuple
    std::vector<std::vector<std::pair<int, int>>> axis_choices(d);
    for (std::size_t a = 0; a < d; ++a) {
        for (int k = 0; k < cell_counts[a]; ++k) axis_choices[a].push_back({k, 1});
        for (int k = 0; k <= cell_counts[a]; ++k) axis_choices[a].push_back({k, 0});
    }
    std::size_t count = 0;
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        // candidate face from current picks
        std::vector<std::pair<int, int>> face(d);
        for (std::size_t a = 0; a < d; ++a) face[a] = axis_choices[a][pick[a]];
        // all ambient cofaces
        std::vector<std::vector<int>> cofaces{{}};
        for (std::size_t a = 0; a < d; ++a) {
            std::vector<std::vector<int>> next;
            for (const auto& c : cofaces) {
                if (face[a].second == 1) {
                    auto e = c;
                    e.push_back(face[a].first);
                    next.push_back(e);
                } else {
                    for (int k : {face[a].first - 1, face[a].first}) {
                        auto e = c;
                        e.push_back(k);
                        next.push_back(e);
                    }
                }
            }
            cofaces = next;
        }
        bool keep = true;
        for (const auto& c : cofaces)
            if (!cell_active(c)) keep = false;
        if (keep) ++count;
        // advance
        std::size_t a = 0;
        while (a < d && ++pick[a] == axis_choices[a].size()) pick[a++] = 0;
        if (a == d) break;
    }
    return count;
}

// Plain BFS components over the comparability relation, recomputed from the
// minimal-open tables without the library's component code.
inline std::vector<std::set<int>> bfs_components(const efl::finite_space& s,
                                                 const std::vector<int>& members) {
    std::set<int> in(members.begin(), members.end());
    std::set<int> todo = in;
    std::vector<std::set<int>> blocks;
    while (!todo.empty()) {
        int seed = *todo.begin();
        std::set<int> block;
        std::vector<int> queue{seed};
        todo.erase(seed);
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            block.insert(x);
            for (int y : in) {
                if (block.count(y) || !todo.count(y)) continue;
                bool related = s.min_open(x).contains(y) || s.min_open(y).contains(x);
                if (related) {
                    todo.erase(y);
                    queue.push_back(y);
                }
            }
        }
        blocks.push_back(block);
    }
    return blocks;
}

// Random T0 space: up-sets of a random DAG on n atoms (edges point from
// lower to higher index, transitively closed).
inline efl::finite_space random_poset(std::mt19937& rng, int n, double edge_prob = 0.3) {
    std::vector<std::vector<bool>> above(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n), false));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < edge_prob) above[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (above[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    above[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    above[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    std::vector<std::string> names;
    std::vector<int> dims(static_cast<std::size_t>(n), -1);
    std::vector<efl::atom_set> min_open(static_cast<std::size_t>(n),
                                        efl::atom_set(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        names.push_back("a" + std::to_string(i));
        min_open[static_cast<std::size_t>(i)].insert(i);
        for (int j = 0; j < n; ++j)
            if (above[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                min_open[static_cast<std::size_t>(i)].insert(j);
    }
    return efl::finite_space(std::move(names), std::move(dims), std::move(min_open));
}

inline efl::atom_set random_subset(std::mt19937& rng, std::size_t universe, double p = 0.4) {
    efl::atom_set s(universe);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < universe; ++i)
        if (coin(rng) < p) s.insert(static_cast<int>(i));
    return s;
}

// Random decreasing chain of open sets over a space.
inline efl::tower random_tower(std::mt19937& rng, const efl::finite_space& s, int depth) {
    efl::tower t;
    efl::atom_set cur = s.full_set();
    t.levels.push_back(cur);
    for (int k = 1; k < depth; ++k) {
        efl::atom_set sub = random_subset(rng, s.atom_count(), 0.7);
        sub &= cur;
        cur = s.interior(sub);
        t.levels.push_back(cur);
    }
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0) {
        t.levels.push_back(t.levels.back());
        t.tail = efl::tower_tail::stabilized;
    } else {
        t.tail = efl::tower_tail::shrinks_to_empty;
    }
    return t;
}

// Branch enumeration: coherent threads of components selected level by
// level by containment, independent of the library's end construction.
inline std::size_t coherent_branches(const efl::finite_space& s, const efl::tower& t) {
    std::vector<std::vector<efl::atom_set>> blocks;
    for (const auto& level : t.levels) blocks.push_back(s.components(level));
    // count threads ending at the last level: each last block determines at
    // most one thread upward; verify each bonding step exists
    std::size_t threads = 0;
    for (const auto& last : blocks.back()) {
        bool ok = true;
        efl::atom_set cur = last;
        for (std::size_t k = blocks.size() - 1; k-- > 0;) {
            bool found = false;
            for (const auto& up : blocks[k])
                if (cur.subset_of(up)) {
                    cur = up;
                    found = true;
                    break;
                }
            if (!found) ok = false;
        }
        if (ok) ++threads;
    }
    return threads;
}

}  // namespace oracle
