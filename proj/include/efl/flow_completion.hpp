#pragma once

#include <string>
#include <utility>
#include <vector>

#include "efl/cell_map.hpp"
#include "efl/completion.hpp"

namespace efl {

enum class flow_direction { right, left };

/// A completed flow: the completion of the absorbing tower together with
/// the induced dynamics on the carrier.
struct flow_completion {
    completion comp;
    cell_map carrier_map;
};

/// Complete a cell map.  The tower is the absorbing tower of the map (of
/// its reverse for the left completion); the induced map satisfies
/// F(p0(c)) = p0(map(c)) cellwise and fixes every end.  Exit edges remain
/// Exit: walks leaving the window stay partial.
inline flow_completion complete_flow(const finite_space& space, const cell_map& map,
                                     flow_direction dir, int max_depth = -1) {
    const cell_map* tower_map = &map;
    cell_map reversed;
    if (dir == flow_direction::left) {
        reversed = reverse(space, map);
        tower_map = &reversed;
    }
    int depth = max_depth > 0 ? max_depth : static_cast<int>(map.cell_count()) + 1;
    tower t = r_exterior_tower(space, *tower_map, depth);
    completion comp(space, t);

    const finite_space& carrier = comp.carrier();
    const auto& ctops = carrier.tops();
    std::vector<int> cell_of_carrier(carrier.atom_count(), -1);
    for (std::size_t i = 0; i < ctops.size(); ++i)
        cell_of_carrier[static_cast<std::size_t>(ctops[i])] = static_cast<int>(i);

    std::vector<std::vector<int>> images(ctops.size());
    std::vector<bool> exit(ctops.size(), false);
    for (std::size_t i = 0; i < ctops.size(); ++i) {
        int end = comp.end_of(ctops[i]);
        if (end >= 0) images[i].push_back(static_cast<int>(i));  // ends are fixed points
    }
    for (std::size_t c = 0; c < map.cell_count(); ++c) {
        int atom = space.tops()[c];
        int carrier_cell = cell_of_carrier[static_cast<std::size_t>(comp.p0(atom))];
        auto& img = images[static_cast<std::size_t>(carrier_cell)];
        for (int d : map.images[c]) {
            int target = cell_of_carrier[static_cast<std::size_t>(
                comp.p0(space.tops()[static_cast<std::size_t>(d)]))];
            img.push_back(target);
        }
        if (map.exit[c]) exit[static_cast<std::size_t>(carrier_cell)] = true;
    }
    cell_map induced = make_cell_map(carrier, std::move(images), std::move(exit));
    return flow_completion{std::move(comp), std::move(induced)};
}

struct convergence_report {
    net_result net;
    int end_index = -1;
    end_point end;
    bool converges = false;
    std::vector<int> witness_levels;  // per level, entry index into the basis neighborhood
};

/// Convergence of a sampled orbit toward its trajectory end: the walk must
/// eventually enter the p0-preimage of every basis neighborhood W0(V) whose
/// component contains the end's branch.  Checked on the minimal such V per
/// level, the branch component itself.
inline convergence_report orbit_convergence(const completion& comp, const cell_map& map,
                                            const orbit_sample& walk) {
    const finite_space& space = comp.space();
    const tower& t = comp.base_tower();
    convergence_report r;
    r.net = classify_net(space, t, walk_atoms(space, walk));
    auto om = omega0_end(space, map, t, walk);
    r.end = om.end;
    r.end_index = om.end_index;
    auto atoms = walk_atoms(space, walk);
    const int n = static_cast<int>(atoms.size());
    r.witness_levels.assign(t.depth(), -1);
    r.converges = true;
    for (std::size_t k = 0; k < t.depth(); ++k) {
        const atom_set& comp_k =
            comp.ends().tree.level_blocks[k][static_cast<std::size_t>(r.end.branch[k])];
        atom_set pre = comp.p0_preimage(comp.w0(comp_k, k));
        int entry = n;
        for (int i = n; i-- > 0 && pre.contains(atoms[static_cast<std::size_t>(i)]);) entry = i;
        if (entry == n) {
            r.converges = false;
        } else {
            r.witness_levels[k] = entry;
        }
    }
    return r;
}

inline convergence_report orbit_convergence(const finite_space& space, const cell_map& map,
                                            const tower& t, const orbit_sample& walk) {
    return orbit_convergence(completion(space, t), map, walk);
}

/// Consequences of completing a flow, with every hypothesis and conclusion
/// reported at the finite scale.
struct flow_report {
    tower twr;
    complete_verdict verdict;
    atom_set critical, periodic, poisson, omega, cl_omega, limit, lbar;
    bool eq_l_c = false;           // limit = critical (top cells)
    bool eq_c_p = false;           // critical = periodic
    bool eq_c_cl_omega = false;    // critical = closure(Omega) at top-cell level
    bool eq_lbar_cl_omega = false; // bar-limit = closure(Omega)
    bool stone = false;
    std::string stone_reason;
    bool chain_ok = false;
    bool biconditional_ok = false;
    bool lagrange_stable = false;
    std::size_t ends_count = 0;
    attraction_report l_attraction;
};

/// The completeness checker for a flow: builds the absorbing tower, runs
/// the completeness test and all set computations.  The stone surrogate
/// judges total disconnectedness at truncation: stabilized tail, singleton
/// limit components, ends matching components, bonding bijective at the
/// stabilized pair.  The verdict must coincide with (critical = closure of
/// Omega at top-cell level AND stone); the report carries that biconditional.
inline flow_report check_thm66(const finite_space& space, const cell_map& map, int max_depth) {
    flow_report r;
    r.twr = r_exterior_tower(space, map, max_depth);
    r.verdict = check_c0_complete(space, r.twr);
    auto classes = classify_cells(space, map);
    r.critical = classes.critical;
    r.periodic = classes.periodic;
    r.poisson = classes.poisson;
    r.omega = omega_global(space, map);
    r.cl_omega = space.closure(r.omega);
    auto lim = limit_sets(space, r.twr);
    r.limit = lim.first;
    r.lbar = lim.second;
    auto es = end_space(space, r.twr);
    r.ends_count = es.ends.size();

    atom_set limit_tops = r.limit & space.top_set();
    r.eq_l_c = limit_tops == r.critical;
    r.eq_c_p = r.critical == r.periodic;
    r.eq_c_cl_omega = r.critical == (r.cl_omega & space.top_set());
    r.eq_lbar_cl_omega = r.lbar == r.cl_omega;

    if (r.twr.tail != tower_tail::stabilized) {
        r.stone = false;
        r.stone_reason = "shrinking tail";
    } else {
        auto blocks = space.components(r.limit);
        bool singletons = true;
        for (const auto& b : blocks)
            if (b.count() != 1) singletons = false;
        bool bonding_bijective = true;
        if (r.twr.depth() >= 2) {
            const auto& last = es.tree.level_blocks[es.tree.depth() - 1];
            const auto& prev = es.tree.level_blocks[es.tree.depth() - 2];
            const auto& par = es.tree.parent[es.tree.depth() - 1];
            std::vector<bool> hit(prev.size(), false);
            for (int p : par) {
                if (p < 0 || hit[static_cast<std::size_t>(p)]) bonding_bijective = false;
                else hit[static_cast<std::size_t>(p)] = true;
            }
            if (last.size() != prev.size()) bonding_bijective = false;
        }
        if (!singletons) {
            r.stone = false;
            r.stone_reason = "multi-cell component";
        } else if (es.ends.size() != blocks.size()) {
            r.stone = false;
            r.stone_reason = "ends do not match limit components";
        } else if (!bonding_bijective) {
            r.stone = false;
            r.stone_reason = "bonding not bijective at stabilization";
        } else {
            r.stone = true;
        }
    }

    r.chain_ok = r.critical.subset_of(r.periodic) && r.periodic.subset_of(r.poisson) &&
                 r.poisson.subset_of(r.omega) && r.omega.subset_of(r.cl_omega);
    r.biconditional_ok = r.verdict.complete() == (r.eq_c_cl_omega && r.stone);
    r.lagrange_stable = map.is_total();
    r.l_attraction = attraction_analysis(space, map, limit_tops);
    return r;
}

inline flow_report check_thm66(const finite_space& space, const cell_map& map) {
    return check_thm66(space, map, static_cast<int>(map.cell_count()) + 1);
}

struct duality_report {
    bool carrier_isomorphic = false;   // left completion vs right completion of the reverse
    bool reverse_involution = false;   // reverse(reverse(map)) = map on edges
    atom_set limit_tops;               // top cells of the right limit
    bool forward_global_weak = false;  // the right limit weakly attracts everything
    bool backward_reaches_all = false; // under the reversed map the limit reaches every cell
};

/// Reversal duality: the left completion is carrier-isomorphic to the right
/// completion of the reversed map, and the limit swaps its attractor role
/// for the source role of all backward walks.
inline duality_report duality_check(const finite_space& space, const cell_map& map) {
    duality_report r;
    auto left = complete_flow(space, map, flow_direction::left);
    auto right_of_reverse = complete_flow(space, reverse(space, map), flow_direction::right);
    r.carrier_isomorphic = same_space(left.comp.carrier(), right_of_reverse.comp.carrier());
    r.reverse_involution = reverse(space, reverse(space, map)).same_edges(map);

    auto right = complete_flow(space, map, flow_direction::right);
    r.limit_tops = right.comp.limit() & space.top_set();
    r.forward_global_weak = attraction_analysis(space, map, r.limit_tops).is_global_weak;
    cell_map rev = reverse(space, map);
    std::vector<int> seeds;
    for (std::size_t c = 0; c < map.cell_count(); ++c)
        if (r.limit_tops.contains(space.tops()[c])) seeds.push_back(static_cast<int>(c));
    auto reach = detail::forward_reach(rev, seeds);
    r.backward_reaches_all =
        std::find(reach.begin(), reach.end(), false) == reach.end();
    return r;
}

}  // namespace efl
