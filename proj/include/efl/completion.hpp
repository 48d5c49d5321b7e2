#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efl/tower.hpp"

namespace efl {

/// The completed exterior space: the original atoms glued to the ends along
/// e0, carrying the induced point topology and the induced tower.
///
/// Carrier points are Interior(atom) for every atom off the limit set, plus
/// Glued(end) for every end; each representable end absorbs its e0-fiber of
/// limit atoms.  The carrier finite space uses the push-out point topology
/// (minimal open of Interior(x) is the p0-image of U_x, glued points are
/// open); the neighborhood structure of the G0 topology is exposed through
/// w0 sets and is_g0_open, which evaluate the saturated-component condition
/// on the stored tower data.  On stabilized towers the two agree.
class completion {
  public:
    completion(finite_space space_in, tower tower_in)
        : space_(std::move(space_in)), tower_(std::move(tower_in)) {
        require_valid(space_, tower_);
        auto lim = limit_sets(space_, tower_);
        limit_ = lim.first;
        lbar_ = lim.second;
        ends_ = end_space(space_, tower_);
        e0_ = e0_analysis(space_, tower_);
        build_carrier();
        build_induced_tower();
    }

    const finite_space& space() const { return space_; }
    const tower& base_tower() const { return tower_; }
    const end_space_result& ends() const { return ends_; }
    std::size_t end_count() const { return ends_.ends.size(); }
    const atom_set& limit() const { return limit_; }
    const atom_set& bar_limit() const { return lbar_; }
    const e0_result& e0() const { return e0_; }

    const finite_space& carrier() const { return *carrier_; }
    const tower& induced_tower() const { return induced_; }

    /// Carrier point of an atom.
    int p0(int atom) const { return p0_[static_cast<std::size_t>(atom)]; }
    /// Carrier point of an end.
    int incl0(int end) const { return incl0_[static_cast<std::size_t>(end)]; }
    /// Original atom of a carrier point, -1 for glued points.
    int atom_of(int carrier_point) const { return carrier_atom_[static_cast<std::size_t>(carrier_point)]; }
    /// End of a glued carrier point, -1 for interior points.
    int end_of(int carrier_point) const { return carrier_end_[static_cast<std::size_t>(carrier_point)]; }

    atom_set glued_set() const {
        atom_set g(carrier_->atom_count());
        for (int c : incl0_) g.insert(c);
        return g;
    }

    atom_set p0_image(const atom_set& s) const {
        atom_set r(carrier_->atom_count());
        s.for_each([&](int x) { r.insert(p0(x)); });
        return r;
    }

    atom_set p0_preimage(const atom_set& w) const {
        atom_set r(space_.atom_count());
        for (std::size_t x = 0; x < space_.atom_count(); ++x)
            if (w.contains(p0_[x])) r.insert(static_cast<int>(x));
        return r;
    }

    std::vector<int> incl0_preimage(const atom_set& w) const {
        std::vector<int> r;
        for (std::size_t a = 0; a < incl0_.size(); ++a)
            if (w.contains(incl0_[a])) r.push_back(static_cast<int>(a));
        return r;
    }

    /// W0(V) for V a q0-saturated open subset of level k: p0(V) plus every
    /// end whose level-k branch component lies inside V.
    atom_set w0(const atom_set& v, std::size_t k) const {
        if (k >= tower_.depth()) throw error(errc::not_saturated, "no such level");
        if (!v.subset_of(tower_.levels[k]))
            throw error(errc::not_saturated, "V is not a subset of the level");
        atom_set check(space_.atom_count());
        const auto& blocks = ends_.tree.level_blocks[k];
        for (const auto& b : blocks)
            if (b.intersects(v)) {
                if (!b.subset_of(v))
                    throw error(errc::not_saturated, "V is not a union of components of the level");
                check |= b;
            }
        if (check != v) throw error(errc::not_saturated, "V is not a union of components of the level");
        atom_set w = p0_image(v);
        for (std::size_t a = 0; a < ends_.ends.size(); ++a) {
            int blk = ends_.ends[a].branch[k];
            if (blocks[static_cast<std::size_t>(blk)].subset_of(v)) w.insert(incl0_[a]);
        }
        return w;
    }

    /// W0(E_k): the level's image plus all ends.
    atom_set w0_level(std::size_t k) const { return w0(tower_.levels[k], k); }

    /// The generating basis sets: every (level, component) pair.  Saturated
    /// opens are exactly the unions of these per level.
    std::vector<std::pair<std::size_t, atom_set>> basis_components() const {
        std::vector<std::pair<std::size_t, atom_set>> out;
        for (std::size_t k = 0; k < tower_.depth(); ++k)
            for (const auto& b : ends_.tree.level_blocks[k]) out.emplace_back(k, b);
        return out;
    }

    struct g0_verdict {
        bool open = false;
        std::optional<int> failing_end;  // end violating the component condition
        bool preimage_open = true;
    };

    /// The G0 openness test for a carrier subset: p0-preimage open in X, and
    /// every glued end admits a level k and a saturated union of components
    /// G with the end's branch inside G, all ends through G glued into W,
    /// and the union of G inside the p0-preimage.
    g0_verdict is_g0_open(const atom_set& w) const {
        g0_verdict v;
        atom_set pre = p0_preimage(w);
        if (!space_.is_open(pre)) {
            v.preimage_open = false;
            return v;
        }
        for (int a : incl0_preimage(w)) {
            bool ok = false;
            for (std::size_t k = 0; k < tower_.depth() && !ok; ++k) {
                int blk = ends_.ends[static_cast<std::size_t>(a)].branch[k];
                const atom_set& comp = ends_.tree.level_blocks[k][static_cast<std::size_t>(blk)];
                if (!comp.subset_of(pre)) continue;
                bool ends_ok = true;
                for (std::size_t b = 0; b < ends_.ends.size(); ++b)
                    if (ends_.ends[b].branch[k] == blk && !w.contains(incl0_[b])) {
                        ends_ok = false;
                        break;
                    }
                ok = ends_ok;
            }
            if (!ok) {
                v.failing_end = a;
                return v;
            }
        }
        v.open = true;
        return v;
    }

  private:
    void build_carrier() {
        std::vector<std::string> names;
        std::vector<int> dims;
        p0_.assign(space_.atom_count(), -1);
        incl0_.assign(ends_.ends.size(), -1);
        for (std::size_t x = 0; x < space_.atom_count(); ++x)
            if (!limit_.contains(static_cast<int>(x))) {
                p0_[x] = static_cast<int>(names.size());
                carrier_atom_.push_back(static_cast<int>(x));
                carrier_end_.push_back(-1);
                names.push_back(space_.name(static_cast<int>(x)));
                dims.push_back(space_.dim(static_cast<int>(x)));
            }
        for (std::size_t a = 0; a < ends_.ends.size(); ++a) {
            incl0_[a] = static_cast<int>(names.size());
            carrier_atom_.push_back(-1);
            carrier_end_.push_back(static_cast<int>(a));
            names.push_back(end_label(space_, ends_, ends_.ends[a]));
            dims.push_back(-1);
        }
        // limit atoms are absorbed by the glued point of their end
        limit_.for_each([&](int x) { p0_[static_cast<std::size_t>(x)] = incl0_[static_cast<std::size_t>(
                                         e0_.e0[static_cast<std::size_t>(x)])]; });

        const std::size_t n = names.size();
        std::vector<atom_set> min_open(n, atom_set(n));
        for (std::size_t c = 0; c < n; ++c) {
            min_open[c].insert(static_cast<int>(c));
            int x = carrier_atom_[c];
            if (x >= 0) space_.min_open(x).for_each([&](int y) { min_open[c].insert(p0(y)); });
        }
        carrier_.emplace(std::move(names), std::move(dims), std::move(min_open));
    }

    void build_induced_tower() {
        induced_.levels.clear();
        for (std::size_t k = 0; k < tower_.depth(); ++k) induced_.levels.push_back(w0_level(k));
        atom_set glued = glued_set();
        if (induced_.levels.back() != glued) induced_.levels.push_back(glued);
        const std::size_t n = induced_.levels.size();
        if (n == 1 || induced_.levels[n - 2] != induced_.levels[n - 1])
            induced_.levels.push_back(induced_.levels.back());
        induced_.tail = tower_tail::stabilized;
    }

    finite_space space_;
    tower tower_;
    atom_set limit_, lbar_;
    end_space_result ends_;
    e0_result e0_;
    std::optional<finite_space> carrier_;
    std::vector<int> p0_, incl0_, carrier_atom_, carrier_end_;
    tower induced_;
};

inline completion build_completion(const finite_space& space, const tower& t) {
    return completion(space, t);
}

/// Verdict of the completeness test.
enum class completeness {
    complete,
    e0_not_injective,
    e0_not_surjective,
    saturated_nbhd,
};

inline const char* completeness_name(completeness c) {
    switch (c) {
        case completeness::complete: return "complete";
        case completeness::e0_not_injective: return "e0_not_injective";
        case completeness::e0_not_surjective: return "e0_not_surjective";
        case completeness::saturated_nbhd: return "saturated_nbhd";
    }
    return "unknown";
}

struct complete_verdict {
    completeness kind = completeness::complete;
    std::optional<std::pair<int, int>> atom_pair;  // e0_not_injective witness
    std::optional<int> end_witness;                // e0_not_surjective witness
    std::optional<int> atom_witness;               // saturated_nbhd witness (U = its minimal open)

    bool complete() const { return kind == completeness::complete; }
};

/// Complete iff e0 is bijective and every limit atom has, inside each of
/// its open neighborhoods, a saturated open subset of some level around it.
/// The neighborhood condition is checked over the finite open lattice via
/// minimal opens: U ranges over U_x, and the minimal saturated open of E_k
/// containing x is its component.
inline complete_verdict check_c0_complete(const finite_space& space, const tower& t) {
    require_valid(space, t);
    auto e0r = e0_analysis(space, t);
    complete_verdict v;
    if (!e0r.injective) {
        v.kind = completeness::e0_not_injective;
        v.atom_pair = e0r.injective_witness;
        return v;
    }
    if (!e0r.surjective) {
        v.kind = completeness::e0_not_surjective;
        v.end_witness = e0r.surjective_witness;
        return v;
    }
    auto lim = limit_sets(space, t).first;
    auto es = end_space(space, t);
    bool bad = false;
    int bad_atom = -1;
    lim.for_each([&](int x) {
        if (bad) return;
        const atom_set& u = space.min_open(x);
        for (std::size_t k = 0; k < t.depth(); ++k) {
            int blk = es.tree.block_of(k, x);
            if (blk >= 0 && es.tree.level_blocks[k][static_cast<std::size_t>(blk)].subset_of(u))
                return;
        }
        bad = true;
        bad_atom = x;
    });
    if (bad) {
        v.kind = completeness::saturated_nbhd;
        v.atom_witness = bad_atom;
    }
    return v;
}

struct separation_report {
    bool ends_separated = true;
    /// For each pair of distinct ends, the first level whose components
    /// split them (always exists on a truncated tower: the last level).
    std::vector<std::vector<int>> separating_level;
    std::vector<bool> escape;  // per atom; limit atoms are false and ignored
    bool escape_all = true;
    bool hausdorff_ok = true;
    bool completeex_applicable = false;
};

/// Separation hypotheses at the finite scale.  escape(x) holds when some
/// closed neighborhood of x misses a level: for a stabilized tower the
/// minimal closed neighborhood must avoid the last level; a tower that
/// shrinks to empty escapes every closed set in the ideal tail.
inline separation_report check_separation(const finite_space& space, const tower& t) {
    require_valid(space, t);
    auto es = end_space(space, t);
    auto lim = limit_sets(space, t).first;
    separation_report r;
    const std::size_t ne = es.ends.size();
    r.separating_level.assign(ne, std::vector<int>(ne, -1));
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = a + 1; b < ne; ++b) {
            int lvl = -1;
            for (std::size_t k = 0; k < t.depth(); ++k)
                if (es.ends[a].branch[k] != es.ends[b].branch[k]) {
                    lvl = static_cast<int>(k);
                    break;
                }
            r.separating_level[a][b] = r.separating_level[b][a] = lvl;
            if (lvl < 0) r.ends_separated = false;
        }
    r.escape.assign(space.atom_count(), false);
    for (std::size_t x = 0; x < space.atom_count(); ++x) {
        if (lim.contains(static_cast<int>(x))) continue;
        if (t.tail == tower_tail::shrinks_to_empty) {
            r.escape[x] = true;
        } else {
            atom_set f = space.closure(space.min_open(static_cast<int>(x)));
            r.escape[x] = !f.intersects(t.last());
        }
        if (!r.escape[x]) r.escape_all = false;
    }
    r.hausdorff_ok = r.ends_separated && r.escape_all;
    if (t.tail == tower_tail::stabilized) {
        bool singletons = true;
        for (const auto& b : space.components(lim))
            if (b.count() != 1) singletons = false;
        r.completeex_applicable = singletons;
    }
    return r;
}

struct compactness_report {
    std::vector<std::size_t> bonding_image_sizes;  // level k >= 1: |im pi0(E_k) -> pi0(E_{k-1})|
    bool bonding_images_finite = true;             // always on a finite model; reported for trace
    bool end_cover_ok = true;                      // complement of end components is finite
    bool connected = false;
    bool escape_all = false;
    bool cocompact_levels = true;  // complements of levels are compact: automatic here
    std::size_t ends_count = 0;
    bool compact_conclusion = false;
};

/// Hypotheses of the compactness results at the finite scale, plus the
/// licensed conclusion.  Several hypotheses are automatic on finite models
/// and are reported for traceability.
inline compactness_report check_compactness(const finite_space& space, const tower& t) {
    require_valid(space, t);
    auto es = end_space(space, t);
    compactness_report r;
    r.ends_count = es.ends.size();
    for (std::size_t k = 1; k < t.depth(); ++k) {
        std::vector<bool> seen(es.tree.level_blocks[k - 1].size(), false);
        std::size_t img = 0;
        for (int par : es.tree.parent[k])
            if (par >= 0 && !seen[static_cast<std::size_t>(par)]) {
                seen[static_cast<std::size_t>(par)] = true;
                ++img;
            }
        r.bonding_image_sizes.push_back(img);
    }
    r.connected = space.components(space.full_set()).size() <= 1;
    r.escape_all = check_separation(space, t).escape_all;
    r.compact_conclusion = r.connected && r.escape_all && r.cocompact_levels && r.end_cover_ok;
    return r;
}

}  // namespace efl
