#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efl/finite_space.hpp"

namespace efl {

/// Declared behavior of the ideal continuation of a tower beyond its stored
/// levels.  stabilized: the chain is constant from the last level on (the
/// last two stored levels must already agree).  shrinks_to_empty: the chain
/// keeps strictly shrinking with empty intersection.
enum class tower_tail { stabilized, shrinks_to_empty };

inline const char* tail_name(tower_tail t) {
    return t == tower_tail::stabilized ? "stabilized" : "shrinks_to_empty";
}

/// A decreasing chain of open sets E_0 >= E_1 >= ... >= E_{N-1}, the finite
/// base of an externology, plus a tail declaration.
struct tower {
    std::vector<atom_set> levels;
    tower_tail tail = tower_tail::stabilized;

    std::size_t depth() const { return levels.size(); }
    const atom_set& last() const { return levels.back(); }
};

/// One diagnostic per violated tower invariant, naming the level.
inline std::vector<std::string> validate_tower(const finite_space& space, const tower& t) {
    std::vector<std::string> diags;
    if (t.levels.empty()) {
        diags.push_back("tower has no levels");
        return diags;
    }
    for (std::size_t k = 0; k < t.levels.size(); ++k) {
        if (t.levels[k].universe() != space.atom_count()) {
            diags.push_back("level " + std::to_string(k) + " not over this space");
            continue;
        }
        if (!space.is_open(t.levels[k]))
            diags.push_back("level " + std::to_string(k) + " not open");
        if (k > 0 && !t.levels[k].subset_of(t.levels[k - 1]))
            diags.push_back("level " + std::to_string(k) + " not contained in level " +
                            std::to_string(k - 1));
    }
    if (t.tail == tower_tail::stabilized && t.levels.size() >= 2 &&
        t.levels[t.levels.size() - 1] != t.levels[t.levels.size() - 2])
        diags.push_back("tail stabilized but level " + std::to_string(t.levels.size() - 1) +
                        " differs from level " + std::to_string(t.levels.size() - 2));
    return diags;
}

inline void require_valid(const finite_space& space, const tower& t) {
    auto diags = validate_tower(space, t);
    if (!diags.empty()) throw error(errc::invalid_tower, diags.front());
}

/// (L, Lbar): the limit set and the bar-limit set.  A stabilized tower has
/// L equal to its last level and Lbar the intersection of level closures; a
/// tower that shrinks to empty has both empty by declaration.
inline std::pair<atom_set, atom_set> limit_sets(const finite_space& space, const tower& t) {
    require_valid(space, t);
    if (t.tail == tower_tail::shrinks_to_empty)
        return {space.empty_set(), space.empty_set()};
    atom_set lbar = space.closure(t.levels.front());
    for (std::size_t k = 1; k < t.levels.size(); ++k) lbar &= space.closure(t.levels[k]);
    return {t.last(), lbar};
}

/// Per-level component partitions with bonding data.  parent[k][i] is the
/// index of the level-(k-1) block containing level-k block i (-1 at level 0).
struct component_tree {
    std::vector<std::vector<atom_set>> level_blocks;
    std::vector<std::vector<int>> parent;

    std::size_t depth() const { return level_blocks.size(); }

    /// Block index of an atom at a level, or -1.
    int block_of(std::size_t level, int atom) const {
        const auto& blocks = level_blocks[level];
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].contains(atom)) return static_cast<int>(i);
        return -1;
    }
};

/// An end: a branch of components, one per level, coherent under the
/// bonding maps.  Two ends are equal iff they agree at the last level.
struct end_point {
    std::vector<int> branch;  // block index per level

    int last_block() const { return branch.back(); }
    bool operator==(const end_point& o) const { return branch.back() == o.branch.back(); }
};

struct end_space_result {
    component_tree tree;
    std::vector<end_point> ends;
};

/// Component tree plus the ends.  Under both tail declarations ends
/// correspond bijectively to the components of the last level (beyond the
/// truncation the bonding maps are declared bijective), ordered by the
/// least atom of that component.
inline end_space_result end_space(const finite_space& space, const tower& t) {
    require_valid(space, t);
    end_space_result r;
    r.tree.level_blocks.reserve(t.depth());
    for (std::size_t k = 0; k < t.depth(); ++k) {
        r.tree.level_blocks.push_back(space.components(t.levels[k]));
        std::vector<int> par(r.tree.level_blocks[k].size(), -1);
        if (k > 0) {
            const auto& prev = r.tree.level_blocks[k - 1];
            for (std::size_t i = 0; i < r.tree.level_blocks[k].size(); ++i) {
                int least = r.tree.level_blocks[k][i].least();
                for (std::size_t j = 0; j < prev.size(); ++j)
                    if (prev[j].contains(least)) {
                        par[i] = static_cast<int>(j);
                        break;
                    }
            }
        }
        r.tree.parent.push_back(std::move(par));
    }
    const std::size_t last = t.depth() - 1;
    for (std::size_t i = 0; i < r.tree.level_blocks[last].size(); ++i) {
        end_point e;
        e.branch.resize(t.depth());
        int b = static_cast<int>(i);
        for (std::size_t k = last + 1; k-- > 0;) {
            e.branch[k] = b;
            b = r.tree.parent[k][static_cast<std::size_t>(b)];
        }
        r.ends.push_back(std::move(e));
    }
    return r;
}

/// Deterministic label of an end: the name of the least atom of its
/// last-level component.
inline std::string end_label(const finite_space& space, const end_space_result& es,
                             const end_point& e) {
    const atom_set& blk = es.tree.level_blocks.back()[static_cast<std::size_t>(e.last_block())];
    return "end:" + space.name(blk.least());
}

struct e0_result {
    std::vector<int> e0;  // atom -> end index, -1 off L
    bool injective = true;
    std::optional<std::pair<int, int>> injective_witness;  // two limit atoms with one end
    bool surjective = true;
    std::optional<int> surjective_witness;  // non-representable end
    std::vector<atom_set> e0_components;    // per end, its fiber inside L
};

/// The canonical map e0 from the limit set to the ends, with witnesses.
/// e0(x) is the branch of components of x; injectivity asks that each
/// branch intersection meets L in exactly {x}; surjectivity that every
/// end's branch meets L.
inline e0_result e0_analysis(const finite_space& space, const tower& t) {
    require_valid(space, t);
    auto [limit, lbar] = limit_sets(space, t);
    (void)lbar;
    auto es = end_space(space, t);
    e0_result r;
    r.e0.assign(space.atom_count(), -1);
    r.e0_components.assign(es.ends.size(), space.empty_set());
    const auto& last_blocks = es.tree.level_blocks.back();
    limit.for_each([&](int x) {
        // the end of x is the one whose last-level component contains x
        for (std::size_t i = 0; i < last_blocks.size(); ++i)
            if (last_blocks[i].contains(x)) {
                r.e0[static_cast<std::size_t>(x)] = static_cast<int>(i);
                r.e0_components[i].insert(x);
                break;
            }
    });
    for (std::size_t i = 0; i < es.ends.size(); ++i) {
        atom_set fiber = last_blocks[i] & limit;
        if (fiber.empty()) {
            if (r.surjective) {
                r.surjective = false;
                r.surjective_witness = static_cast<int>(i);
            }
        } else if (fiber.count() > 1 && r.injective) {
            r.injective = false;
            auto m = fiber.members();
            r.injective_witness = std::make_pair(m[0], m[1]);
        }
    }
    return r;
}

struct net_result {
    bool eps_net = false;
    bool pi0_net = false;
    std::optional<end_point> branch;
    std::vector<int> entry_level;      // per level: first index with the suffix inside E_k, -1 none
    std::vector<int> entry_component;  // per level: first index with the suffix in one component
};

/// Classify a finite atom sequence against a tower.  "Eventually" means
/// from some index to the end of the sample; entry indices report those
/// points so callers can demand margins.  A single trailing sample does not
/// count as settled, for the level clause or the component clause: the
/// settled suffix must have length at least two, otherwise any sequence
/// would settle vacuously at its last sample.
inline net_result classify_net(const finite_space& space, const tower& t,
                               const std::vector<int>& seq) {
    if (seq.empty()) throw error(errc::invalid_orbit, "empty sequence");
    require_valid(space, t);
    const int n = static_cast<int>(seq.size());
    net_result r;
    r.entry_level.assign(t.depth(), -1);
    r.entry_component.assign(t.depth(), -1);
    r.eps_net = true;
    r.pi0_net = true;
    std::vector<int> branch(t.depth(), -1);
    for (std::size_t k = 0; k < t.depth(); ++k) {
        int entry = n;
        for (int i = n; i-- > 0 && t.levels[k].contains(seq[static_cast<std::size_t>(i)]);)
            entry = i;
        if (entry > n - 2) {
            r.eps_net = r.pi0_net = false;
            if (entry < n) r.entry_level[k] = entry;
            continue;
        }
        r.entry_level[k] = entry;
        auto blocks = space.components(t.levels[k]);
        int blk = -1;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].contains(seq[static_cast<std::size_t>(n - 1)])) {
                blk = static_cast<int>(i);
                break;
            }
        int centry = n - 1;
        while (centry > 0 &&
               blocks[static_cast<std::size_t>(blk)].contains(seq[static_cast<std::size_t>(centry - 1)]))
            --centry;
        r.entry_component[k] = centry;
        branch[k] = blk;
        if (n - centry < 2) r.pi0_net = false;
    }
    if (r.pi0_net) {
        end_point e;
        e.branch = branch;
        r.branch = e;
    }
    return r;
}

}  // namespace efl
