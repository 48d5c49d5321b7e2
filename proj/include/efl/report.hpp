#pragma once

#include <json.hpp>

#include "efl/completion.hpp"
#include "efl/flow_completion.hpp"
#include "efl/gallery.hpp"

namespace efl::report {

using nlohmann::json;

inline json atom_names(const finite_space& s, const atom_set& set) {
    json arr = json::array();
    set.for_each([&](int x) { arr.push_back(s.name(x)); });
    return arr;
}

inline json space_block(const finite_space& s) {
    return json{{"atoms", s.atom_count()}, {"tops", s.tops().size()}};
}

inline json tower_block(const tower& t) {
    json levels = json::array();
    for (const auto& level : t.levels) levels.push_back(level.count());
    return json{{"levels", levels}, {"tail", tail_name(t.tail)}};
}

inline json ends_block(const finite_space& s, const tower& t) {
    auto es = end_space(s, t);
    json ends = json::array();
    for (const auto& e : es.ends) ends.push_back(end_label(s, es, e));
    json per_level = json::array();
    for (const auto& blocks : es.tree.level_blocks) per_level.push_back(blocks.size());
    return json{{"theorem", "endspace"},
                {"count", es.ends.size()},
                {"ends", ends},
                {"components_per_level", per_level}};
}

inline json limits_block(const finite_space& s, const tower& t) {
    auto [l, lbar] = limit_sets(s, t);
    return json{{"theorem", "limitspace"},
                {"L", atom_names(s, l)},
                {"Lbar", atom_names(s, lbar)}};
}

inline json complete_block(const finite_space& s, const tower& t) {
    auto v = check_c0_complete(s, t);
    json out{{"theorem", "bijectioncero"},
             {"complete", v.complete()},
             {"verdict", completeness_name(v.kind)}};
    if (v.atom_pair)
        out["witness"] = json::array({s.name(v.atom_pair->first), s.name(v.atom_pair->second)});
    if (v.end_witness) {
        auto es = end_space(s, t);
        out["witness"] = end_label(s, es, es.ends[static_cast<std::size_t>(*v.end_witness)]);
    }
    if (v.atom_witness) out["witness"] = s.name(*v.atom_witness);
    return out;
}

inline json completion_block(const completion& c) {
    json ends = json::array();
    auto glued = c.glued_set();
    glued.for_each([&](int g) { ends.push_back(c.carrier().name(g)); });
    bool complete_after = check_c0_complete(c.carrier(), c.induced_tower()).complete();
    return json{{"theorem", "c0completion"},
                {"carrier_atoms", c.carrier().atom_count()},
                {"added_points", c.carrier().atom_count() -
                                     (c.space().atom_count() - c.limit().count())},
                {"ends", ends},
                {"complete_after", complete_after}};
}

inline json separation_block(const finite_space& s, const tower& t) {
    auto r = check_separation(s, t);
    return json{{"theorem", "condhausdorff"},
                {"ends_separated", r.ends_separated},
                {"escape_all", r.escape_all},
                {"hausdorff_ok", r.hausdorff_ok},
                {"completeex_applicable", r.completeex_applicable}};
}

inline json compactness_block(const finite_space& s, const tower& t) {
    auto r = check_compactness(s, t);
    return json{{"theorem", "condcompact"},
                {"bonding_image_sizes", r.bonding_image_sizes},
                {"bonding_images_finite", r.bonding_images_finite},
                {"end_cover_ok", r.end_cover_ok},
                {"connected", r.connected},
                {"escape_all", r.escape_all},
                {"cocompact_levels", r.cocompact_levels},
                {"ends", r.ends_count},
                {"compact_conclusion", r.compact_conclusion}};
}

inline json thm66_block(const finite_space& s, const flow_report& r) {
    return json{{"theorem", "thm66"},
                {"complete", r.verdict.complete()},
                {"verdict", completeness_name(r.verdict.kind)},
                {"stone", r.stone},
                {"stone_reason", r.stone_reason},
                {"chain_ok", r.chain_ok},
                {"biconditional_ok", r.biconditional_ok},
                {"lagrange_stable", r.lagrange_stable},
                {"ends", r.ends_count},
                {"critical", atom_names(s, r.critical)},
                {"periodic", atom_names(s, r.periodic)},
                {"poisson", atom_names(s, r.poisson)},
                {"omega", atom_names(s, r.omega)},
                {"limit_size", r.limit.count()},
                {"cl_omega_size", r.cl_omega.count()},
                {"eq",
                 json{{"L_eq_C", r.eq_l_c},
                      {"C_eq_P", r.eq_c_p},
                      {"C_eq_clOmega", r.eq_c_cl_omega},
                      {"Lbar_eq_clOmega", r.eq_lbar_cl_omega}}},
                {"attractor",
                 json{{"weak", r.l_attraction.is_weak_attractor},
                      {"strong", r.l_attraction.is_attractor},
                      {"global_weak", r.l_attraction.is_global_weak},
                      {"global", r.l_attraction.is_global}}}};
}

inline json basins_block(const finite_space& s, const cell_map& m, const tower& t) {
    auto es = end_space(s, t);
    auto r = basin_decomposition(s, m, t);
    json basins = json::object();
    for (std::size_t i = 0; i < r.basins.size(); ++i)
        basins[end_label(s, es, es.ends[i])] = atom_names(s, r.basins[i]);
    return json{{"theorem", "omega0decomposition"},
                {"basins", basins},
                {"ambiguous", atom_names(s, r.ambiguous)},
                {"lagrange_stable", m.is_total()}};
}

inline json orbit_block(const finite_space& s, const cell_map& m, const tower& t,
                        const orbit_sample& walk) {
    auto es = end_space(s, t);
    auto r = orbit_convergence(s, m, t, walk);
    json cells = json::array();
    for (int c : walk.cells) cells.push_back(s.name(s.tops()[static_cast<std::size_t>(c)]));
    return json{{"theorem", "redes"},
                {"walk", cells},
                {"eps_net", r.net.eps_net},
                {"pi0_net", r.net.pi0_net},
                {"converges", r.converges},
                {"end", end_label(s, es, es.ends[static_cast<std::size_t>(r.end_index)])},
                {"witness_levels", r.witness_levels}};
}

inline json duality_block(const finite_space& s, const cell_map& m) {
    auto r = duality_check(s, m);
    return json{{"theorem", "reversal"},
                {"carrier_isomorphic", r.carrier_isomorphic},
                {"reverse_involution", r.reverse_involution},
                {"limit", atom_names(s, r.limit_tops)},
                {"forward_global_weak", r.forward_global_weak},
                {"backward_reaches_all", r.backward_reaches_all}};
}

/// Assemble the top-level report envelope.
inline json envelope(const std::string& fixture_name, const finite_space& s, const tower* t) {
    json out{{"schema", "efl-report/1"},
             {"fixture", fixture_name},
             {"space", space_block(s)},
             {"results", json::object()}};
    if (t) out["tower"] = tower_block(*t);
    return out;
}

}  // namespace efl::report
