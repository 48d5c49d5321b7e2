#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efl/cell_map_builder.hpp"
#include "efl/flow_completion.hpp"

namespace efl {

/// A ready-made space, optionally with its cell map and its tower.
struct fixture {
    std::string name;
    finite_space space;
    std::optional<cell_map> map;
    std::optional<tower> twr;
};

inline std::vector<std::string> gallery_names() {
    return {"ray5",        "ray5shift", "line5shift",      "twosinks",   "cycle3",
            "bintree",     "morse-circle", "limit-cycle-grid", "double-well"};
}

namespace detail {

inline finite_space line_space(int cells) {
    std::vector<int> all(static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) all[static_cast<std::size_t>(i)] = i;
    return build_grid_space({cells}, all);
}

/// Circle of n 1-cells: cells c0..c{n-1} and vertices v_i between c_{i-1}
/// and c_i.
inline finite_space circle_space(int n) {
    std::vector<std::string> names;
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) {
        names.push_back("c" + std::to_string(i));
        dims.push_back(1);
    }
    for (int i = 0; i < n; ++i) {
        names.push_back("v" + std::to_string(i));
        dims.push_back(0);
    }
    const std::size_t total = names.size();
    std::vector<atom_set> min_open(total, atom_set(total));
    for (int i = 0; i < n; ++i) min_open[static_cast<std::size_t>(i)].insert(i);
    for (int i = 0; i < n; ++i) {
        auto& u = min_open[static_cast<std::size_t>(n + i)];
        u.insert(n + i);
        u.insert((i + n - 1) % n);
        u.insert(i);
    }
    return finite_space(std::move(names), std::move(dims), std::move(min_open));
}

/// Binary tree of depth d as an open 1-complex: edges e<j> into every node
/// j >= 2 (heap numbering), internal vertices n<j> for depth(j) < d, leaf
/// vertices omitted so branches stay open toward the leaves.
inline finite_space bintree_space(int d) {
    const int node_count = (1 << (d + 1)) - 1;  // heap ids 1..node_count
    auto depth_of = [](int j) {
        int q = 0;
        while (j > 1) {
            j >>= 1;
            ++q;
        }
        return q;
    };
    std::vector<std::string> names;
    std::vector<int> dims;
    std::vector<int> edge_atom(static_cast<std::size_t>(node_count) + 1, -1);
    std::vector<int> vertex_atom(static_cast<std::size_t>(node_count) + 1, -1);
    for (int j = 2; j <= node_count; ++j) {
        edge_atom[static_cast<std::size_t>(j)] = static_cast<int>(names.size());
        names.push_back("e" + std::to_string(j));
        dims.push_back(1);
    }
    for (int j = 1; j <= node_count; ++j)
        if (depth_of(j) < d) {
            vertex_atom[static_cast<std::size_t>(j)] = static_cast<int>(names.size());
            names.push_back("n" + std::to_string(j));
            dims.push_back(0);
        }
    const std::size_t total = names.size();
    std::vector<atom_set> min_open(total, atom_set(total));
    for (std::size_t x = 0; x < total; ++x) min_open[x].insert(static_cast<int>(x));
    for (int j = 1; j <= node_count; ++j) {
        int v = vertex_atom[static_cast<std::size_t>(j)];
        if (v < 0) continue;
        auto& u = min_open[static_cast<std::size_t>(v)];
        if (j >= 2) u.insert(edge_atom[static_cast<std::size_t>(j)]);
        for (int ch : {2 * j, 2 * j + 1})
            if (ch <= node_count) u.insert(edge_atom[static_cast<std::size_t>(ch)]);
    }
    return finite_space(std::move(names), std::move(dims), std::move(min_open));
}

/// Tower of a binary tree: level k is the union over depth-k nodes of the
/// open hull of that node's subtree edges (stem included for k >= 1).
inline tower bintree_tower(const finite_space& space, int d) {
    const int node_count = (1 << (d + 1)) - 1;
    tower t;
    t.tail = tower_tail::shrinks_to_empty;
    for (int k = 0; k <= d; ++k) {
        atom_set level(space.atom_count());
        const int first = 1 << k, last = (1 << (k + 1)) - 1;
        for (int j = first; j <= last && j <= node_count; ++j) {
            // edges of the subtree rooted at j, stem edge e_j included
            atom_set edges(space.atom_count());
            std::vector<int> stack{j};
            while (!stack.empty()) {
                int m = stack.back();
                stack.pop_back();
                if (m >= 2) edges.insert(space.atom("e" + std::to_string(m)));
                for (int ch : {2 * m, 2 * m + 1})
                    if (ch <= node_count) stack.push_back(ch);
            }
            level |= space.open_hull(edges);
        }
        t.levels.push_back(std::move(level));
    }
    return t;
}

inline cell_map shift_map(const finite_space& space, bool last_exits) {
    const std::size_t n = space.tops().size();
    std::vector<std::vector<int>> images(n);
    std::vector<bool> exit(n, false);
    for (std::size_t c = 0; c + 1 < n; ++c) images[c] = {static_cast<int>(c) + 1};
    if (last_exits)
        exit[n - 1] = true;
    else
        images[n - 1] = {static_cast<int>(n) - 1};
    return make_cell_map(space, std::move(images), std::move(exit));
}

inline cell_map morse_circle_map(const finite_space& space, int n) {
    std::vector<std::vector<int>> images(static_cast<std::size_t>(n));
    std::vector<bool> exit(static_cast<std::size_t>(n), false);
    const int top = n / 2;
    for (int i = 0; i < n; ++i) {
        if (i == 0 || i == top)
            images[static_cast<std::size_t>(i)] = {i};
        else if (i < top)
            images[static_cast<std::size_t>(i)] = {i - 1};
        else
            images[static_cast<std::size_t>(i)] = {(i + 1) % n};
    }
    return make_cell_map(space, std::move(images), std::move(exit));
}

}  // namespace detail

/// Deterministic fixture gallery.  `param` feeds the parametric fixtures:
/// bintree depth (default 2), morse-circle cell count (default 8),
/// limit-cycle-grid and double-well resolution (defaults 32 and 16).
inline fixture gallery(const std::string& name, int param = -1) {
    if (name == "ray5" || name == "ray5shift") {
        finite_space space = detail::line_space(5);
        tower t;
        t.tail = tower_tail::shrinks_to_empty;
        for (int k = 0; k < 5; ++k) {
            atom_set tail_cells(space.atom_count());
            for (int i = k; i < 5; ++i) tail_cells.insert(space.atom("c" + std::to_string(i)));
            t.levels.push_back(space.open_hull(tail_cells));
        }
        fixture f{name, std::move(space), std::nullopt, std::move(t)};
        if (name == "ray5shift") f.map = detail::shift_map(f.space, true);
        return f;
    }
    if (name == "line5shift") {
        finite_space space = detail::line_space(5);
        cell_map map = detail::shift_map(space, false);
        tower t = r_exterior_tower(space, map);
        return fixture{name, std::move(space), std::move(map), std::move(t)};
    }
    if (name == "twosinks") {
        finite_space space = detail::line_space(5);
        std::vector<std::vector<int>> images{{0}, {0}, {1, 3}, {4}, {4}};
        cell_map map = make_cell_map(space, std::move(images), std::vector<bool>(5, false));
        tower t = r_exterior_tower(space, map);
        return fixture{name, std::move(space), std::move(map), std::move(t)};
    }
    if (name == "cycle3") {
        finite_space space = detail::circle_space(3);
        std::vector<std::vector<int>> images{{1}, {2}, {0}};
        cell_map map = make_cell_map(space, std::move(images), std::vector<bool>(3, false));
        tower t = r_exterior_tower(space, map);
        return fixture{name, std::move(space), std::move(map), std::move(t)};
    }
    if (name == "bintree") {
        int d = param > 0 ? param : 2;
        finite_space space = detail::bintree_space(d);
        tower t = detail::bintree_tower(space, d);
        return fixture{name + "(" + std::to_string(d) + ")", std::move(space), std::nullopt,
                       std::move(t)};
    }
    if (name == "morse-circle") {
        int n = param > 0 ? param : 8;
        if (n < 4 || n % 2) throw error(errc::unknown_fixture, "morse-circle needs an even n >= 4");
        finite_space space = detail::circle_space(n);
        cell_map map = detail::morse_circle_map(space, n);
        tower t = r_exterior_tower(space, map);
        return fixture{name + "(" + std::to_string(n) + ")", std::move(space), std::move(map),
                       std::move(t)};
    }
    if (name == "limit-cycle-grid") {
        int res = param > 0 ? param : 32;
        grid_spec grid{{-2.0, -2.0}, {2.0, 2.0}, {res, res}};
        approx_params params{0.3, 8, -1.0};
        auto [space, map] = build_cell_map(vector_field::radial(), grid, params);
        tower t = r_exterior_tower(space, map);
        return fixture{name + "(" + std::to_string(res) + ")", std::move(space), std::move(map),
                       std::move(t)};
    }
    if (name == "double-well") {
        int res = param > 0 ? param : 16;
        grid_spec grid{{-2.0}, {2.0}, {res}};
        approx_params params{0.2, 8, -1.0};
        polynomial h = parse_polynomial("x^4 - 2*x^2 + 1");
        auto [space, map] = build_cell_map(vector_field::gradient(h, 1), grid, params);
        tower t = r_exterior_tower(space, map);
        return fixture{name + "(" + std::to_string(res) + ")", std::move(space), std::move(map),
                       std::move(t)};
    }
    throw error(errc::unknown_fixture, name);
}

}  // namespace efl
