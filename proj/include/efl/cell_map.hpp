#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "efl/tower.hpp"

namespace efl {

/// Multivalued self-map on the top cells of a space: the time-discretized
/// flow.  Cells are indexed by position in space.tops().  A cell may carry
/// the exit marker: some orbit branch leaves the modeled window.
struct cell_map {
    std::vector<std::vector<int>> images;  // per cell, sorted image cell indices
    std::vector<bool> exit;

    std::size_t cell_count() const { return images.size(); }

    bool is_total() const {
        for (std::size_t c = 0; c < images.size(); ++c)
            if (exit[c] || images[c].empty()) return false;
        return true;
    }

    bool same_edges(const cell_map& o) const { return images == o.images; }
};

inline cell_map make_cell_map(const finite_space& space,
                              std::vector<std::vector<int>> images,
                              std::vector<bool> exit) {
    const std::size_t n = space.tops().size();
    if (images.size() != n || exit.size() != n)
        throw error(errc::not_a_top_cell, "cell map must cover exactly the top cells");
    for (auto& img : images) {
        for (int d : img)
            if (d < 0 || static_cast<std::size_t>(d) >= n)
                throw error(errc::not_a_top_cell, "image index out of range");
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
    }
    return cell_map{std::move(images), std::move(exit)};
}

/// Edge transpose.  Cells with no preimage receive the exit marker: under
/// the reversed dynamics their orbit leaves the window.
inline cell_map reverse(const finite_space& space, const cell_map& map) {
    (void)space;
    const std::size_t n = map.cell_count();
    std::vector<std::vector<int>> rev(n);
    for (std::size_t c = 0; c < n; ++c)
        for (int d : map.images[c]) rev[static_cast<std::size_t>(d)].push_back(static_cast<int>(c));
    std::vector<bool> exit(n, false);
    for (std::size_t c = 0; c < n; ++c) {
        std::sort(rev[c].begin(), rev[c].end());
        if (rev[c].empty()) exit[c] = true;
    }
    return cell_map{std::move(rev), std::move(exit)};
}

namespace detail {

/// Strongly connected components of the cell digraph (iterative Tarjan).
/// Returns component id per cell, ids in reverse topological order
/// (every edge goes from a higher id to a lower or equal id).
struct scc_info {
    std::vector<int> comp;    // cell -> scc id
    int count = 0;
    std::vector<bool> nontrivial;  // scc id -> has a cycle
};

inline scc_info compute_scc(const cell_map& map) {
    const int n = static_cast<int>(map.cell_count());
    scc_info info;
    info.comp.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0), idx(static_cast<std::size_t>(n), -1);
    std::vector<int> stack, call_node, call_edge;
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    int counter = 0;
    for (int s = 0; s < n; ++s) {
        if (idx[static_cast<std::size_t>(s)] != -1) continue;
        call_node.push_back(s);
        call_edge.push_back(0);
        idx[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = counter++;
        stack.push_back(s);
        on_stack[static_cast<std::size_t>(s)] = true;
        while (!call_node.empty()) {
            int v = call_node.back();
            int& e = call_edge.back();
            const auto& succ = map.images[static_cast<std::size_t>(v)];
            if (e < static_cast<int>(succ.size())) {
                int w = succ[static_cast<std::size_t>(e++)];
                if (idx[static_cast<std::size_t>(w)] == -1) {
                    idx[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    call_node.push_back(w);
                    call_edge.push_back(0);
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(v)] =
                        std::min(low[static_cast<std::size_t>(v)], idx[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(v)] == idx[static_cast<std::size_t>(v)]) {
                    int id = info.count++;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        info.comp[static_cast<std::size_t>(w)] = id;
                    } while (w != v);
                }
                call_node.pop_back();
                call_edge.pop_back();
                if (!call_node.empty()) {
                    int u = call_node.back();
                    low[static_cast<std::size_t>(u)] =
                        std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }
    info.nontrivial.assign(static_cast<std::size_t>(info.count), false);
    std::vector<int> size(static_cast<std::size_t>(info.count), 0);
    for (int c = 0; c < n; ++c) ++size[static_cast<std::size_t>(info.comp[static_cast<std::size_t>(c)])];
    for (int c = 0; c < n; ++c) {
        int id = info.comp[static_cast<std::size_t>(c)];
        if (size[static_cast<std::size_t>(id)] > 1)
            info.nontrivial[static_cast<std::size_t>(id)] = true;
        else
            for (int d : map.images[static_cast<std::size_t>(c)])
                if (d == c) info.nontrivial[static_cast<std::size_t>(id)] = true;
    }
    return info;
}

inline std::vector<bool> forward_reach(const cell_map& map, const std::vector<int>& seeds) {
    std::vector<bool> seen(map.cell_count(), false);
    std::vector<int> stack;
    for (int s : seeds)
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : map.images[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
    }
    return seen;
}

inline std::vector<bool> backward_reach(const finite_space& space, const cell_map& map,
                                        const std::vector<int>& seeds) {
    return forward_reach(reverse(space, map), seeds);
}

}  // namespace detail

inline int cell_index(const finite_space& space, int top_atom) {
    const auto& tops = space.tops();
    auto it = std::lower_bound(tops.begin(), tops.end(), top_atom);
    if (it == tops.end() || *it != top_atom)
        throw error(errc::not_a_top_cell, space.name(top_atom) + " is not a top cell");
    return static_cast<int>(it - tops.begin());
}

inline atom_set cells_to_atoms(const finite_space& space, const std::vector<bool>& cells) {
    atom_set s(space.atom_count());
    for (std::size_t c = 0; c < cells.size(); ++c)
        if (cells[c]) s.insert(space.tops()[c]);
    return s;
}

/// omega-limit of a single cell: the eventual set of its forward orbit,
/// equivalently the decreasing fixpoint of T <- map(T) started from the
/// forward-reachable set.  Computed as the cells reachable from a cycle
/// that is itself reachable from c; orbit branches that exit contribute
/// nothing.
inline atom_set omega_limit(const finite_space& space, const cell_map& map, int cell) {
    if (cell < 0 || static_cast<std::size_t>(cell) >= map.cell_count())
        throw error(errc::not_a_top_cell, "cell index out of range");
    auto scc = detail::compute_scc(map);
    auto reach = detail::forward_reach(map, {cell});
    std::vector<int> cyc;
    for (std::size_t c = 0; c < map.cell_count(); ++c)
        if (reach[c] && scc.nontrivial[static_cast<std::size_t>(scc.comp[c])])
            cyc.push_back(static_cast<int>(c));
    return cells_to_atoms(space, detail::forward_reach(map, cyc));
}

/// Union of the omega-limits of all cells.
inline atom_set omega_global(const finite_space& space, const cell_map& map) {
    auto scc = detail::compute_scc(map);
    std::vector<int> cyc;
    for (std::size_t c = 0; c < map.cell_count(); ++c)
        if (scc.nontrivial[static_cast<std::size_t>(scc.comp[c])]) cyc.push_back(static_cast<int>(c));
    return cells_to_atoms(space, detail::forward_reach(map, cyc));
}

struct cell_classes {
    atom_set critical;  // c in map(c)
    atom_set periodic;  // on a directed cycle
    atom_set poisson;   // c in omega(c)
};

inline cell_classes classify_cells(const finite_space& space, const cell_map& map) {
    cell_classes r{space.empty_set(), space.empty_set(), space.empty_set()};
    auto scc = detail::compute_scc(map);
    for (std::size_t c = 0; c < map.cell_count(); ++c) {
        int atom = space.tops()[c];
        bool self = std::binary_search(map.images[c].begin(), map.images[c].end(), static_cast<int>(c));
        if (self) r.critical.insert(atom);
        if (scc.nontrivial[static_cast<std::size_t>(scc.comp[c])]) r.periodic.insert(atom);
        // c in omega(c) iff some cycle is reachable from c and reaches c back:
        // on a finite graph that is exactly membership of a nontrivial scc.
        if (scc.nontrivial[static_cast<std::size_t>(scc.comp[c])]) r.poisson.insert(atom);
    }
    return r;
}

/// Largest subset of A whose cells all have an infinite forward walk and an
/// infinite backward chain inside A (iterative trimming).
inline atom_set invariant_hull(const finite_space& space, const cell_map& map, const atom_set& a) {
    std::vector<bool> in(map.cell_count(), false);
    for (std::size_t c = 0; c < map.cell_count(); ++c) in[c] = a.contains(space.tops()[c]);
    auto rev = reverse(space, map);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < map.cell_count(); ++c) {
            if (!in[c]) continue;
            auto has_succ = [&](const cell_map& m) {
                for (int d : m.images[c])
                    if (in[static_cast<std::size_t>(d)]) return true;
                return false;
            };
            if (!has_succ(map) || !has_succ(rev)) {
                in[c] = false;
                changed = true;
            }
        }
    }
    return cells_to_atoms(space, in);
}

struct attraction_report {
    atom_set region_weak;    // omega meets M
    atom_set region_strong;  // omega nonempty and inside M
    bool is_weak_attractor = false;
    bool is_attractor = false;
    bool is_global_weak = false;
    bool is_global = false;
};

/// Regions of (weak) attraction of a set of top cells.  The attractor flags
/// use face-adjacency of top cells as the neighborhood notion: every cell
/// sharing a face with M must lie in the region.
inline attraction_report attraction_analysis(const finite_space& space, const cell_map& map,
                                             const atom_set& m) {
    auto scc = detail::compute_scc(map);
    std::vector<int> m_cells;
    for (std::size_t c = 0; c < map.cell_count(); ++c)
        if (m.contains(space.tops()[c])) m_cells.push_back(static_cast<int>(c));

    auto reaches_m = detail::backward_reach(space, map, m_cells);
    std::vector<int> cyc_to_m, all_cyc, bad_cyc;
    std::vector<int> outside;
    for (std::size_t c = 0; c < map.cell_count(); ++c)
        if (!m.contains(space.tops()[c])) outside.push_back(static_cast<int>(c));
    auto reaches_outside = detail::backward_reach(space, map, outside);
    for (std::size_t c = 0; c < map.cell_count(); ++c) {
        if (!scc.nontrivial[static_cast<std::size_t>(scc.comp[c])]) continue;
        all_cyc.push_back(static_cast<int>(c));
        if (reaches_m[c]) cyc_to_m.push_back(static_cast<int>(c));
        if (reaches_outside[c]) bad_cyc.push_back(static_cast<int>(c));
    }
    auto weak = detail::backward_reach(space, map, cyc_to_m);
    auto has_omega = detail::backward_reach(space, map, all_cyc);
    auto bad = detail::backward_reach(space, map, bad_cyc);

    attraction_report r;
    r.region_weak = cells_to_atoms(space, weak);
    std::vector<bool> strong(map.cell_count(), false);
    for (std::size_t c = 0; c < map.cell_count(); ++c) strong[c] = has_omega[c] && !bad[c];
    r.region_strong = cells_to_atoms(space, strong);

    atom_set nbhd = space.adjacent_tops(m);
    r.is_weak_attractor = nbhd.subset_of(r.region_weak);
    r.is_attractor = nbhd.subset_of(r.region_strong);
    r.is_global_weak = space.top_set().subset_of(r.region_weak);
    r.is_global = space.top_set().subset_of(r.region_strong);
    return r;
}

struct r_exterior_cert {
    bool exterior = false;
    std::vector<int> entry_bound;                  // per cell; 0 inside U
    std::optional<std::pair<int, int>> violation;  // edge leaving U
    std::optional<std::vector<int>> cycle;         // cycle outside U
};

/// U is absorbing iff it is forward-invariant on top cells and the top-cell
/// subgraph outside U is acyclic; then every infinite walk eventually stays
/// in U and the certificate bounds the entry time per cell.
inline r_exterior_cert is_r_exterior(const finite_space& space, const cell_map& map,
                                     const atom_set& u) {
    if (!space.is_open(u)) throw error(errc::not_open, "U is not open");
    r_exterior_cert cert;
    std::vector<bool> inside(map.cell_count(), false);
    for (std::size_t c = 0; c < map.cell_count(); ++c) inside[c] = u.contains(space.tops()[c]);
    for (std::size_t c = 0; c < map.cell_count(); ++c) {
        if (!inside[c]) continue;
        for (int d : map.images[c])
            if (!inside[static_cast<std::size_t>(d)]) {
                cert.violation = std::make_pair(static_cast<int>(c), d);
                return cert;
            }
    }
    // longest-path bound over the outside subgraph; a cycle shows up as a
    // cell with unresolved bound
    const std::size_t n = map.cell_count();
    cert.entry_bound.assign(n, 0);
    std::vector<int> state(n, 0);  // 0 unvisited, 1 in progress, 2 done
    std::vector<int> node_stack, edge_stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (inside[s] || state[s]) continue;
        node_stack.push_back(static_cast<int>(s));
        edge_stack.push_back(0);
        state[s] = 1;
        while (!node_stack.empty()) {
            int v = node_stack.back();
            int& e = edge_stack.back();
            const auto& succ = map.images[static_cast<std::size_t>(v)];
            if (e < static_cast<int>(succ.size())) {
                int w = succ[static_cast<std::size_t>(e++)];
                if (inside[static_cast<std::size_t>(w)]) continue;
                if (state[static_cast<std::size_t>(w)] == 1) {
                    // recover the cycle from the stack
                    std::vector<int> cyc;
                    auto it = std::find(node_stack.begin(), node_stack.end(), w);
                    for (; it != node_stack.end(); ++it) cyc.push_back(*it);
                    cert.cycle = std::move(cyc);
                    return cert;
                }
                if (state[static_cast<std::size_t>(w)] == 0) {
                    state[static_cast<std::size_t>(w)] = 1;
                    node_stack.push_back(w);
                    edge_stack.push_back(0);
                }
            } else {
                int bound = 0;
                bool any = false;
                for (int w : succ) {
                    any = true;
                    int wb = inside[static_cast<std::size_t>(w)]
                                 ? 0
                                 : cert.entry_bound[static_cast<std::size_t>(w)];
                    bound = std::max(bound, wb);
                }
                cert.entry_bound[static_cast<std::size_t>(v)] = any ? bound + 1 : 1;
                state[static_cast<std::size_t>(v)] = 2;
                node_stack.pop_back();
                edge_stack.pop_back();
            }
        }
    }
    cert.exterior = true;
    return cert;
}

/// Canonical absorbing tower of a cell map: level k is the open hull of the
/// k-fold image of all top cells, truncated at the first fixpoint (tail
/// stabilized, with the repeated level stored) or when the image empties or
/// max_depth is hit (tail shrinks to empty).  Every level is absorbing.
inline tower r_exterior_tower(const finite_space& space, const cell_map& map, int max_depth) {
    if (max_depth < 1) throw error(errc::invalid_tower, "max_depth must be at least 1");
    tower t;
    std::vector<bool> s(map.cell_count(), true);
    atom_set tops_set(space.atom_count());
    for (int a : space.tops()) tops_set.insert(a);
    t.levels.push_back(space.open_hull(tops_set));
    t.tail = tower_tail::shrinks_to_empty;
    for (int step = 0; step < max_depth; ++step) {
        std::vector<bool> next(map.cell_count(), false);
        for (std::size_t c = 0; c < map.cell_count(); ++c)
            if (s[c])
                for (int d : map.images[c]) next[static_cast<std::size_t>(d)] = true;
        if (next == s) {
            t.levels.push_back(t.levels.back());
            t.tail = tower_tail::stabilized;
            break;
        }
        bool empty = std::find(next.begin(), next.end(), true) == next.end();
        if (empty) {
            t.tail = tower_tail::shrinks_to_empty;
            break;
        }
        s = std::move(next);
        t.levels.push_back(space.open_hull(cells_to_atoms(space, s)));
    }
    return t;
}

inline tower r_exterior_tower(const finite_space& space, const cell_map& map) {
    return r_exterior_tower(space, map, static_cast<int>(map.cell_count()) + 1);
}

/// A sampled orbit: a finite walk along map edges, by cell index.
struct orbit_sample {
    std::vector<int> cells;

    int start() const { return cells.front(); }
};

inline orbit_sample make_orbit(const finite_space& space, const cell_map& map,
                               std::vector<int> cells) {
    (void)space;
    if (cells.empty()) throw error(errc::invalid_orbit, "empty walk");
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        const auto& img = map.images[static_cast<std::size_t>(cells[i])];
        if (!std::binary_search(img.begin(), img.end(), cells[i + 1]))
            throw error(errc::invalid_orbit,
                        "walk step " + std::to_string(i) + " is not a map edge");
    }
    return orbit_sample{std::move(cells)};
}

/// Extend a walk by choosing the seeded-uniform image at every step; stops
/// early only when the orbit exits (or dead-ends).
inline orbit_sample random_walk(const finite_space& space, const cell_map& map, int start,
                                int steps, std::mt19937& rng) {
    std::vector<int> cells{start};
    for (int i = 0; i < steps; ++i) {
        const auto& img = map.images[static_cast<std::size_t>(cells.back())];
        if (img.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, img.size() - 1);
        cells.push_back(img[pick(rng)]);
    }
    return make_orbit(space, map, std::move(cells));
}

/// Deterministic walk: always the least image cell.
inline orbit_sample greedy_walk(const finite_space& space, const cell_map& map, int start,
                                int steps) {
    std::vector<int> cells{start};
    for (int i = 0; i < steps; ++i) {
        const auto& img = map.images[static_cast<std::size_t>(cells.back())];
        if (img.empty()) break;
        cells.push_back(img.front());
    }
    return make_orbit(space, map, std::move(cells));
}

inline std::vector<int> walk_atoms(const finite_space& space, const orbit_sample& walk) {
    std::vector<int> atoms;
    atoms.reserve(walk.cells.size());
    for (int c : walk.cells) atoms.push_back(space.tops()[static_cast<std::size_t>(c)]);
    return atoms;
}

struct omega0_result {
    end_point end;
    int end_index = -1;            // index into end_space ends
    std::vector<int> settle_index;  // per level, first index of the settled suffix
};

/// The end of a trajectory: per level, the component the walk's tail
/// settles in.  Coherent by construction (all components contain the final
/// sample).  Throws InsufficientHorizon naming the first level the walk
/// never settles in.
inline omega0_result omega0_end(const finite_space& space, const cell_map& map, const tower& t,
                                const orbit_sample& walk) {
    (void)map;
    require_valid(space, t);
    auto atoms = walk_atoms(space, walk);
    auto es = end_space(space, t);
    omega0_result r;
    r.end.branch.assign(t.depth(), -1);
    r.settle_index.assign(t.depth(), -1);
    const int n = static_cast<int>(atoms.size());
    for (std::size_t k = 0; k < t.depth(); ++k) {
        if (!t.levels[k].contains(atoms[static_cast<std::size_t>(n - 1)]))
            throw error(errc::insufficient_horizon,
                        "walk never settles in level " + std::to_string(k));
        int blk = es.tree.block_of(k, atoms[static_cast<std::size_t>(n - 1)]);
        const atom_set& comp = es.tree.level_blocks[k][static_cast<std::size_t>(blk)];
        int start = n - 1;
        while (start > 0 && comp.contains(atoms[static_cast<std::size_t>(start - 1)])) --start;
        r.end.branch[k] = blk;
        r.settle_index[k] = start;
    }
    for (std::size_t a = 0; a < es.ends.size(); ++a)
        if (es.ends[a].branch.back() == r.end.branch.back()) r.end_index = static_cast<int>(a);
    return r;
}

struct basin_result {
    std::vector<atom_set> basins;  // per end: cells all of whose maximal walks reach that end
    atom_set ambiguous;
};

/// Partition of the top cells by trajectory end.  A cell joins the basin of
/// end a iff every maximal walk from it yields a; cells reaching several
/// ends, or walks that never settle, go to ambiguous.
inline basin_result basin_decomposition(const finite_space& space, const cell_map& map,
                                        const tower& t) {
    require_valid(space, t);
    auto es = end_space(space, t);
    const std::size_t ne = es.ends.size();
    auto scc = detail::compute_scc(map);
    const int n = static_cast<int>(map.cell_count());

    // End of a settled terminal behavior: the branch of components of a set
    // of atoms that must share one component per level; nullopt = spoiler.
    auto branch_of_atoms = [&](const std::vector<int>& atoms) -> std::optional<int> {
        int last_blk = -1;
        for (std::size_t k = 0; k < t.depth(); ++k) {
            int blk = -1;
            for (int a : atoms) {
                if (!t.levels[k].contains(a)) return std::nullopt;
                int b = es.tree.block_of(k, a);
                if (blk == -1) blk = b;
                if (b != blk) return std::nullopt;
            }
            if (k + 1 == t.depth()) last_blk = blk;
        }
        for (std::size_t e = 0; e < ne; ++e)
            if (es.ends[e].branch.back() == last_blk) return static_cast<int>(e);
        return std::nullopt;
    };

    // per scc: bitmask of reachable ends + spoiler flag
    std::vector<std::vector<bool>> endset(static_cast<std::size_t>(scc.count),
                                          std::vector<bool>(ne, false));
    std::vector<bool> spoiler(static_cast<std::size_t>(scc.count), false);
    std::vector<std::vector<int>> scc_cells(static_cast<std::size_t>(scc.count));
    for (int c = 0; c < n; ++c)
        scc_cells[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(c)])].push_back(c);

    for (int id = 0; id < scc.count; ++id) {
        std::vector<int> atoms;
        for (int c : scc_cells[static_cast<std::size_t>(id)])
            atoms.push_back(space.tops()[static_cast<std::size_t>(c)]);
        if (scc.nontrivial[static_cast<std::size_t>(id)]) {
            auto e = branch_of_atoms(atoms);
            if (e)
                endset[static_cast<std::size_t>(id)][static_cast<std::size_t>(*e)] = true;
            else
                spoiler[static_cast<std::size_t>(id)] = true;
        }
        for (int c : scc_cells[static_cast<std::size_t>(id)]) {
            bool terminal = map.exit[static_cast<std::size_t>(c)] ||
                            map.images[static_cast<std::size_t>(c)].empty();
            if (!terminal) continue;
            auto e = branch_of_atoms({space.tops()[static_cast<std::size_t>(c)]});
            if (e)
                endset[static_cast<std::size_t>(id)][static_cast<std::size_t>(*e)] = true;
            else
                spoiler[static_cast<std::size_t>(id)] = true;
        }
    }

    // Tarjan ids are reverse-topological: successors of cells in scc id have
    // ids <= id, so accumulate in increasing id order.
    for (int id = 0; id < scc.count; ++id)
        for (int c : scc_cells[static_cast<std::size_t>(id)])
            for (int d : map.images[static_cast<std::size_t>(c)]) {
                int jd = scc.comp[static_cast<std::size_t>(d)];
                if (jd == id) continue;
                spoiler[static_cast<std::size_t>(id)] =
                    spoiler[static_cast<std::size_t>(id)] || spoiler[static_cast<std::size_t>(jd)];
                for (std::size_t e = 0; e < ne; ++e)
                    if (endset[static_cast<std::size_t>(jd)][e])
                        endset[static_cast<std::size_t>(id)][e] = true;
            }

    basin_result r;
    r.basins.assign(ne, space.empty_set());
    r.ambiguous = space.empty_set();
    for (int c = 0; c < n; ++c) {
        int id = scc.comp[static_cast<std::size_t>(c)];
        int hits = 0, which = -1;
        for (std::size_t e = 0; e < ne; ++e)
            if (endset[static_cast<std::size_t>(id)][e]) {
                ++hits;
                which = static_cast<int>(e);
            }
        int atom = space.tops()[static_cast<std::size_t>(c)];
        if (!spoiler[static_cast<std::size_t>(id)] && hits == 1)
            r.basins[static_cast<std::size_t>(which)].insert(atom);
        else
            r.ambiguous.insert(atom);
    }
    return r;
}

}  // namespace efl
