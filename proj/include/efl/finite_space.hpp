#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "efl/atom_set.hpp"
#include "efl/error.hpp"

namespace efl {

/// A finite T0 space given by its minimal-open-neighborhood table.
///
/// Atom x carries U_x, the smallest open set containing x.  A set S is open
/// iff U_x is contained in S for every member x.  Invariants enforced at
/// construction: x in U_x; y in U_x implies U_y subset of U_x; U_x = U_y
/// implies x = y.  Instances are immutable; all queries are const.
class finite_space {
  public:
    finite_space(std::vector<std::string> names, std::vector<int> dims,
                 std::vector<atom_set> min_open)
        : names_(std::move(names)), dims_(std::move(dims)), min_open_(std::move(min_open)) {
        validate();
        build_tables();
    }

    std::size_t atom_count() const { return names_.size(); }
    const std::string& name(int atom) const { return names_[static_cast<std::size_t>(atom)]; }
    int dim(int atom) const { return dims_[static_cast<std::size_t>(atom)]; }

    /// Index of a named atom, or -1.
    int atom(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    const atom_set& min_open(int atom) const { return min_open_[static_cast<std::size_t>(atom)]; }
    /// closure({atom}): this atom plus everything whose minimal open hits it.
    const atom_set& down(int atom) const { return down_[static_cast<std::size_t>(atom)]; }

    /// Top cells: the open points (atoms whose minimal open is a singleton).
    const std::vector<int>& tops() const { return tops_; }
    const atom_set& top_set() const { return top_set_; }
    bool is_top(int atom) const { return top_set_.contains(atom); }

    atom_set empty_set() const { return atom_set(atom_count()); }
    atom_set full_set() const { return atom_set::full(atom_count()); }

    bool is_open(const atom_set& s) const {
        check_universe(s);
        bool ok = true;
        s.for_each([&](int x) {
            if (!min_open_[static_cast<std::size_t>(x)].subset_of(s)) ok = false;
        });
        return ok;
    }

    atom_set interior(const atom_set& s) const {
        check_universe(s);
        atom_set r(atom_count());
        s.for_each([&](int x) {
            if (min_open_[static_cast<std::size_t>(x)].subset_of(s)) r.insert(x);
        });
        return r;
    }

    atom_set closure(const atom_set& s) const {
        check_universe(s);
        atom_set r(atom_count());
        s.for_each([&](int x) { r |= down_[static_cast<std::size_t>(x)]; });
        return r;
    }

    /// interior(closure(S)); for a set of top cells this is the largest open
    /// set whose top cells are exactly S.
    atom_set open_hull(const atom_set& s) const { return interior(closure(s)); }

    /// Connected components of the subspace S under comparability
    /// (x ~ y iff y in U_x or x in U_y, both in S).  Blocks are returned
    /// sorted by least atom, which is also the block label.
    std::vector<atom_set> components(const atom_set& s) const {
        check_universe(s);
        std::vector<int> block(atom_count(), -1);
        std::vector<atom_set> blocks;
        std::vector<int> stack;
        s.for_each([&](int x) {
            if (block[static_cast<std::size_t>(x)] >= 0) return;
            int id = static_cast<int>(blocks.size());
            blocks.emplace_back(atom_count());
            stack.push_back(x);
            block[static_cast<std::size_t>(x)] = id;
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                blocks[static_cast<std::size_t>(id)].insert(y);
                auto visit = [&](int z) {
                    if (s.contains(z) && block[static_cast<std::size_t>(z)] < 0) {
                        block[static_cast<std::size_t>(z)] = id;
                        stack.push_back(z);
                    }
                };
                min_open_[static_cast<std::size_t>(y)].for_each(visit);
                down_[static_cast<std::size_t>(y)].for_each(visit);
            }
        });
        std::sort(blocks.begin(), blocks.end(),
                  [](const atom_set& a, const atom_set& b) { return a.least() < b.least(); });
        return blocks;
    }

    /// Saturation of S inside the open set E: the union of components of E
    /// meeting S.  Returns (is_saturated, saturation).
    std::pair<bool, atom_set> saturate(const atom_set& s, const atom_set& e) const {
        if (!s.subset_of(e))
            throw error(errc::not_a_subset, "saturate: S is not a subset of E");
        atom_set sat(atom_count());
        for (const atom_set& c : components(e))
            if (c.intersects(s)) sat |= c;
        return {sat == s, sat};
    }

    /// Top cells sharing a face with any cell of M (M included).
    atom_set adjacent_tops(const atom_set& m) const {
        check_universe(m);
        atom_set faces = closure(m);
        atom_set r(atom_count());
        faces.for_each([&](int f) { r |= min_open_[static_cast<std::size_t>(f)]; });
        r &= top_set_;
        return r;
    }

    std::vector<std::string> names_of(const atom_set& s) const {
        std::vector<std::string> out;
        s.for_each([&](int x) { out.push_back(names_[static_cast<std::size_t>(x)]); });
        return out;
    }

  private:
    void validate() const {
        if (names_.size() != min_open_.size() || names_.size() != dims_.size())
            throw error(errc::invalid_space, "table sizes disagree");
        for (std::size_t x = 0; x < min_open_.size(); ++x) {
            if (min_open_[x].universe() != names_.size())
                throw error(errc::invalid_space, "min_open universe mismatch at " + names_[x]);
            if (!min_open_[x].contains(static_cast<int>(x)))
                throw error(errc::invalid_space, "atom " + names_[x] + " missing from its own minimal open");
            min_open_[x].for_each([&](int y) {
                if (!min_open_[static_cast<std::size_t>(y)].subset_of(min_open_[x]))
                    throw error(errc::invalid_space,
                                "coherence fails: U_" + names_[static_cast<std::size_t>(y)] +
                                    " not inside U_" + names_[x]);
            });
            for (std::size_t y = x + 1; y < min_open_.size(); ++y)
                if (min_open_[x] == min_open_[y])
                    throw error(errc::invalid_space, "not T0: " + names_[x] + " and " + names_[y]);
        }
    }

    void build_tables() {
        for (std::size_t x = 0; x < names_.size(); ++x)
            if (!index_.emplace(names_[x], static_cast<int>(x)).second)
                throw error(errc::invalid_space, "duplicate atom name " + names_[x]);
        down_.assign(atom_count(), atom_set(atom_count()));
        for (std::size_t x = 0; x < atom_count(); ++x)
            min_open_[x].for_each([&](int y) { down_[static_cast<std::size_t>(y)].insert(static_cast<int>(x)); });
        top_set_ = atom_set(atom_count());
        for (std::size_t x = 0; x < atom_count(); ++x)
            if (min_open_[x].count() == 1) {
                tops_.push_back(static_cast<int>(x));
                top_set_.insert(static_cast<int>(x));
            }
    }

    void check_universe(const atom_set& s) const {
        if (s.universe() != atom_count())
            throw error(errc::not_a_subset, "atom set belongs to a different space");
    }

    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<atom_set> min_open_;
    std::vector<atom_set> down_;
    std::vector<int> tops_;
    atom_set top_set_;
    std::map<std::string, int> index_;
};

/// Structural equality: same atoms in the same order with the same tables.
inline bool same_space(const finite_space& a, const finite_space& b) {
    if (a.atom_count() != b.atom_count()) return false;
    for (std::size_t x = 0; x < a.atom_count(); ++x) {
        int i = static_cast<int>(x);
        if (a.name(i) != b.name(i) || a.dim(i) != b.dim(i) || a.min_open(i) != b.min_open(i))
            return false;
    }
    return true;
}

namespace detail {

/// A face of the ambient cubical grid: per axis a lattice position plus an
/// extent bit (1 = spans [k, k+1), 0 = sits on grid line k).
struct grid_face {
    std::vector<int> pos;
    std::vector<int> ext;

    bool operator<(const grid_face& o) const {
        if (pos != o.pos) return pos < o.pos;
        return ext < o.ext;
    }
    bool operator==(const grid_face& o) const { return pos == o.pos && ext == o.ext; }
};

inline int face_dim(const grid_face& f) {
    int d = 0;
    for (int e : f.ext) d += e;
    return d;
}

/// All top cells of the unbounded ambient grid having f as a face.
inline std::vector<std::vector<int>> ambient_cofaces(const grid_face& f) {
    std::vector<std::vector<int>> cells{{}};
    for (std::size_t a = 0; a < f.pos.size(); ++a) {
        std::vector<std::vector<int>> next;
        for (const auto& c : cells) {
            if (f.ext[a] == 1) {
                auto e = c;
                e.push_back(f.pos[a]);
                next.push_back(std::move(e));
            } else {
                for (int k : {f.pos[a] - 1, f.pos[a]}) {
                    auto e = c;
                    e.push_back(k);
                    next.push_back(std::move(e));
                }
            }
        }
        cells = std::move(next);
    }
    return cells;
}

inline std::string face_name_1d(const grid_face& f) {
    // vertex between cells k-1 and k
    return "f" + std::to_string(f.pos[0] - 1) + std::to_string(f.pos[0]);
}

inline std::string face_name(const grid_face& f) {
    if (f.pos.size() == 1) return face_name_1d(f);
    std::string s = "f";
    for (std::size_t a = 0; a < f.pos.size(); ++a) {
        if (a) s += "_";
        s += std::to_string(f.pos[a]);
        if (f.ext[a]) s += "+";
    }
    return s;
}

}  // namespace detail

/// Face poset of a cubical grid window.  A face exists iff every ambient top
/// cell containing it lies inside the window and is active; faces on the
/// window boundary are omitted, so the space models an open region.  Atoms
/// are ordered top cells first (row-major, named c<k>), then lower faces in
/// lexicographic coordinate order.
inline finite_space build_grid_space(const std::vector<int>& cell_counts,
                                     const std::vector<int>& active) {
    if (cell_counts.empty()) throw error(errc::empty_space, "no axes");
    for (int n : cell_counts)
        if (n <= 0) throw error(errc::empty_space, "non-positive cell count");
    if (active.empty()) throw error(errc::empty_space, "no active top cells");

    const std::size_t d = cell_counts.size();
    long total = 1;
    for (int n : cell_counts) total *= n;
    std::vector<char> is_active(static_cast<std::size_t>(total), 0);
    for (int idx : active) {
        if (idx < 0 || idx >= total) throw error(errc::empty_space, "active index out of range");
        is_active[static_cast<std::size_t>(idx)] = 1;
    }

    auto linear = [&](const std::vector<int>& cell) {
        long idx = 0;
        for (std::size_t a = 0; a < d; ++a) idx = idx * cell_counts[a] + cell[a];
        return idx;
    };
    auto in_window = [&](const std::vector<int>& cell) {
        for (std::size_t a = 0; a < d; ++a)
            if (cell[a] < 0 || cell[a] >= cell_counts[a]) return false;
        return true;
    };
    auto cell_ok = [&](const std::vector<int>& cell) {
        return in_window(cell) && is_active[static_cast<std::size_t>(linear(cell))];
    };

    // Collect candidate faces from the active cells, keep those whose full
    // ambient star is active.
    std::map<detail::grid_face, std::vector<long>> faces;  // face -> cofaces (linear ids)
    std::vector<int> cell(d);
    for (long idx = 0; idx < total; ++idx) {
        if (!is_active[static_cast<std::size_t>(idx)]) continue;
        long rest = idx;
        for (std::size_t a = d; a-- > 0;) {
            cell[a] = static_cast<int>(rest % cell_counts[a]);
            rest /= cell_counts[a];
        }
        // enumerate all faces of this cell: per axis choose span, low line or high line
        std::vector<detail::grid_face> partial{detail::grid_face{{}, {}}};
        for (std::size_t a = 0; a < d; ++a) {
            std::vector<detail::grid_face> next;
            for (const auto& f : partial) {
                for (int choice = 0; choice < 3; ++choice) {
                    auto g = f;
                    if (choice == 0) {
                        g.pos.push_back(cell[a]);
                        g.ext.push_back(1);
                    } else {
                        g.pos.push_back(cell[a] + (choice == 2 ? 1 : 0));
                        g.ext.push_back(0);
                    }
                    next.push_back(std::move(g));
                }
            }
            partial = std::move(next);
        }
        for (auto& f : partial) {
            if (faces.count(f)) continue;
            bool keep = true;
            std::vector<long> star;
            for (const auto& cf : detail::ambient_cofaces(f)) {
                if (!cell_ok(cf)) {
                    keep = false;
                    break;
                }
                star.push_back(linear(cf));
            }
            if (keep) faces.emplace(std::move(f), std::move(star));
        }
    }

    // Atom order: active top cells by linear index, then lower faces in map order.
    std::vector<std::string> names;
    std::vector<int> dims;
    std::map<detail::grid_face, int> face_index;
    std::vector<long> top_of_atom;
    for (long idx = 0; idx < total; ++idx)
        if (is_active[static_cast<std::size_t>(idx)]) {
            names.push_back("c" + std::to_string(idx));
            dims.push_back(static_cast<int>(d));
            top_of_atom.push_back(idx);
        }
    std::map<long, int> top_atom;
    for (std::size_t i = 0; i < top_of_atom.size(); ++i) top_atom[top_of_atom[i]] = static_cast<int>(i);

    for (const auto& entry : faces) {
        const detail::grid_face& f = entry.first;
        if (detail::face_dim(f) == static_cast<int>(d)) continue;  // top cells already placed
        face_index[f] = static_cast<int>(names.size());
        names.push_back(detail::face_name(f));
        dims.push_back(detail::face_dim(f));
    }

    const std::size_t n_atoms = names.size();
    std::vector<atom_set> min_open(n_atoms, atom_set(n_atoms));
    for (std::size_t x = 0; x < n_atoms; ++x) min_open[x].insert(static_cast<int>(x));
    // U_face = face plus every existing face strictly above it.  Walk pairs:
    // g lies above f iff g's star is a subset of f's star and g differs.
    // Cheaper: a face g is above f iff per axis g either spans f's line or
    // matches it; enumerate upward from each face directly.
    for (const auto& [f, star] : faces) {
        int fd = detail::face_dim(f);
        int fx = fd == static_cast<int>(d) ? top_atom[star[0]] : face_index[f];
        // enumerate faces above f: per axis with ext 0 optionally widen to span
        std::vector<detail::grid_face> ups{detail::grid_face{{}, {}}};
        for (std::size_t a = 0; a < d; ++a) {
            std::vector<detail::grid_face> next;
            for (const auto& u : ups) {
                auto keep = u;
                keep.pos.push_back(f.pos[a]);
                keep.ext.push_back(f.ext[a]);
                next.push_back(keep);
                if (f.ext[a] == 0) {
                    for (int k : {f.pos[a] - 1, f.pos[a]}) {
                        auto g = u;
                        g.pos.push_back(k);
                        g.ext.push_back(1);
                        next.push_back(std::move(g));
                    }
                }
            }
            ups = std::move(next);
        }
        for (const auto& g : ups) {
            if (g == f) continue;
            auto it = faces.find(g);
            if (it == faces.end()) continue;
            int gx = detail::face_dim(g) == static_cast<int>(d) ? top_atom[it->second[0]]
                                                                : face_index[g];
            min_open[static_cast<std::size_t>(fx)].insert(gx);
        }
    }

    return finite_space(std::move(names), std::move(dims), std::move(min_open));
}

}  // namespace efl
