#include <catch2/catch_amalgamated.hpp>

#include "efl/cell_map.hpp"
#include "efl/gallery.hpp"
#include "oracles.hpp"

using namespace efl;

namespace {

atom_set named(const finite_space& s, std::initializer_list<const char*> names) {
    atom_set r(s.atom_count());
    for (const char* n : names) r.insert(s.atom(n));
    return r;
}

// Independent route for omega: decreasing fixpoint of T <- map(T) started
// from the forward-reachable set, straight from the definition.
atom_set omega_fixpoint_oracle(const finite_space& s, const cell_map& m, int cell) {
    std::set<int> t{cell};
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<int> next = t;
        for (int c : t)
            for (int d : m.images[static_cast<std::size_t>(c)])
                if (next.insert(d).second) grew = true;
        t = next;
    }
    while (true) {
        std::set<int> next;
        for (int c : t)
            for (int d : m.images[static_cast<std::size_t>(c)]) next.insert(d);
        if (next == t) break;
        t = next;
    }
    atom_set out(s.atom_count());
    for (int c : t) out.insert(s.tops()[static_cast<std::size_t>(c)]);
    return out;
}

std::vector<fixture> map_gallery() {
    std::vector<fixture> fs;
    for (const char* n : {"ray5shift", "line5shift", "twosinks", "cycle3"}) fs.push_back(gallery(n));
    fs.push_back(gallery("morse-circle", 8));
    fs.push_back(gallery("double-well", 16));
    return fs;
}

}  // namespace

TEST_CASE("omega limits") {
    auto f = gallery("line5shift");
    CHECK(omega_limit(f.space, *f.map, 0) == named(f.space, {"c4"}));
    CHECK(omega_limit(f.space, *f.map, 4) == named(f.space, {"c4"}));

    auto two = gallery("twosinks");
    CHECK(omega_limit(two.space, *two.map, 2) == named(two.space, {"c0", "c4"}));
    CHECK(omega_global(two.space, *two.map) == named(two.space, {"c0", "c4"}));

    CHECK_THROWS_AS(omega_limit(f.space, *f.map, 99), error);
}

TEST_CASE("omega equals the decreasing fixpoint and is map-invariant") {
    for (const auto& f : map_gallery()) {
        INFO(f.name);
        for (std::size_t c = 0; c < f.map->cell_count(); ++c) {
            atom_set om = omega_limit(f.space, *f.map, static_cast<int>(c));
            CHECK(om == omega_fixpoint_oracle(f.space, *f.map, static_cast<int>(c)));
            // map(omega) = omega
            atom_set image(f.space.atom_count());
            om.for_each([&](int a) {
                int cell = cell_index(f.space, a);
                for (int d : f.map->images[static_cast<std::size_t>(cell)])
                    image.insert(f.space.tops()[static_cast<std::size_t>(d)]);
            });
            CHECK(image == om);
        }
    }
}

TEST_CASE("classify_cells") {
    SECTION("line5shift") {
        auto f = gallery("line5shift");
        auto r = classify_cells(f.space, *f.map);
        CHECK(r.critical == named(f.space, {"c4"}));
        CHECK(r.periodic == named(f.space, {"c4"}));
        CHECK(r.poisson == named(f.space, {"c4"}));
    }
    SECTION("pure rotation") {
        auto f = gallery("cycle3");
        auto r = classify_cells(f.space, *f.map);
        CHECK(r.critical.empty());
        CHECK(r.periodic == named(f.space, {"c0", "c1", "c2"}));
        CHECK(r.poisson == r.periodic);
    }
    SECTION("morse-circle") {
        auto f = gallery("morse-circle", 8);
        auto r = classify_cells(f.space, *f.map);
        CHECK(r.critical == named(f.space, {"c0", "c4"}));
        CHECK(r.periodic == named(f.space, {"c0", "c4"}));
        CHECK(r.poisson == named(f.space, {"c0", "c4"}));
    }
    SECTION("chain of inclusions across the gallery") {
        for (const auto& f : map_gallery()) {
            auto r = classify_cells(f.space, *f.map);
            atom_set omega = omega_global(f.space, *f.map);
            CHECK(r.critical.subset_of(r.periodic));
            CHECK(r.periodic.subset_of(r.poisson));
            CHECK(r.poisson.subset_of(omega));
            CHECK(omega.subset_of(f.space.closure(omega)));
        }
    }
}

TEST_CASE("invariant_hull trims to the two-sided core") {
    auto f = gallery("twosinks");
    atom_set a = named(f.space, {"c0", "c1", "c2"});
    CHECK(invariant_hull(f.space, *f.map, a) == named(f.space, {"c0"}));
    CHECK(invariant_hull(f.space, *f.map, f.space.top_set()) == named(f.space, {"c0", "c4"}));
    auto cyc = gallery("cycle3");
    CHECK(invariant_hull(cyc.space, *cyc.map, cyc.space.top_set()) == cyc.space.top_set());
}

TEST_CASE("attraction_analysis") {
    SECTION("the sink of line5shift is a global attractor") {
        auto f = gallery("line5shift");
        auto r = attraction_analysis(f.space, *f.map, named(f.space, {"c4"}));
        CHECK(r.is_global);
        CHECK(r.is_global_weak);
        CHECK(r.region_strong == f.space.top_set());
    }
    SECTION("one sink of twosinks attracts its side only") {
        auto f = gallery("twosinks");
        auto r = attraction_analysis(f.space, *f.map, named(f.space, {"c0"}));
        CHECK(r.is_attractor);
        CHECK_FALSE(r.is_global);
        CHECK(r.region_strong == named(f.space, {"c0", "c1"}));
        CHECK(r.region_weak == named(f.space, {"c0", "c1", "c2"}));
    }
    SECTION("a transient cell is not an attractor") {
        auto f = gallery("twosinks");
        auto r = attraction_analysis(f.space, *f.map, named(f.space, {"c2"}));
        CHECK_FALSE(r.is_weak_attractor);
        CHECK(r.region_weak.empty());
    }
}

TEST_CASE("is_r_exterior") {
    auto f = gallery("line5shift");
    SECTION("the sink hull is absorbing with entry bound 4") {
        auto cert = is_r_exterior(f.space, *f.map, f.space.open_hull(named(f.space, {"c4"})));
        CHECK(cert.exterior);
        int max_entry = 0;
        for (int b : cert.entry_bound) max_entry = std::max(max_entry, b);
        CHECK(max_entry == 4);
    }
    SECTION("a non-invariant open set is rejected with the offending edge") {
        auto cert = is_r_exterior(f.space, *f.map, f.space.open_hull(named(f.space, {"c3"})));
        CHECK_FALSE(cert.exterior);
        REQUIRE(cert.violation.has_value());
        CHECK(cert.violation->first == 3);
        CHECK(cert.violation->second == 4);
    }
    SECTION("the whole space is absorbing") {
        CHECK(is_r_exterior(f.space, *f.map, f.space.full_set()).exterior);
    }
    SECTION("a cycle outside is certified") {
        auto cyc = gallery("cycle3");
        auto cert = is_r_exterior(cyc.space, *cyc.map, cyc.space.empty_set());
        CHECK_FALSE(cert.exterior);
        REQUIRE(cert.cycle.has_value());
        CHECK(cert.cycle->size() == 3);
    }
    SECTION("non-open sets are errors") {
        CHECK_THROWS_AS(is_r_exterior(f.space, *f.map, named(f.space, {"f01"})), error);
    }
}

TEST_CASE("r_exterior_tower") {
    SECTION("line5shift stabilizes at the sink hull after 4 steps") {
        auto f = gallery("line5shift");
        tower t = r_exterior_tower(f.space, *f.map);
        CHECK(t.tail == tower_tail::stabilized);
        CHECK(t.last() == named(f.space, {"c4"}));
        REQUIRE(t.depth() == 6);  // levels 0..4 plus the stabilized repeat
        CHECK(t.levels[4] == t.levels[5]);
        CHECK(validate_tower(f.space, t).empty());
    }
    SECTION("identity map gives the constant tower") {
        auto f = gallery("line5shift");
        std::vector<std::vector<int>> images{{0}, {1}, {2}, {3}, {4}};
        cell_map ident = make_cell_map(f.space, std::move(images), std::vector<bool>(5, false));
        tower t = r_exterior_tower(f.space, ident);
        CHECK(t.tail == tower_tail::stabilized);
        for (const auto& level : t.levels) CHECK(level == f.space.full_set());
        CHECK(t.depth() == 2);
    }
    SECTION("morse-circle stabilizes at the two-component set") {
        auto f = gallery("morse-circle", 8);
        tower t = r_exterior_tower(f.space, *f.map);
        CHECK(t.tail == tower_tail::stabilized);
        CHECK(t.last() == named(f.space, {"c0", "c4"}));
        CHECK(f.space.components(t.last()).size() == 2);
    }
    SECTION("every level is absorbing") {
        for (const auto& f : map_gallery()) {
            INFO(f.name);
            tower t = r_exterior_tower(f.space, *f.map);
            CHECK(validate_tower(f.space, t).empty());
            for (const auto& level : t.levels)
                CHECK(is_r_exterior(f.space, *f.map, level).exterior);
        }
    }
}

TEST_CASE("reverse") {
    auto f = gallery("line5shift");
    SECTION("involution on edges") {
        CHECK(reverse(f.space, reverse(f.space, *f.map)).same_edges(*f.map));
        for (const auto& g : map_gallery())
            CHECK(reverse(g.space, reverse(g.space, *g.map)).same_edges(*g.map));
    }
    SECTION("reversed shift: the sink stays critical, the source exits") {
        cell_map rev = reverse(f.space, *f.map);
        auto r = classify_cells(f.space, rev);
        CHECK(r.critical == named(f.space, {"c4"}));
        CHECK(rev.exit[0]);
        CHECK(rev.images[0].empty());
    }
    SECTION("reversing a rotation keeps the periodic set") {
        auto cyc = gallery("cycle3");
        cell_map rev = reverse(cyc.space, *cyc.map);
        CHECK(classify_cells(cyc.space, rev).periodic ==
              classify_cells(cyc.space, *cyc.map).periodic);
    }
    SECTION("reverse swaps attraction for repulsion (brute force on small fixtures)") {
        for (const auto& g : map_gallery()) {
            if (g.map->cell_count() > 16) continue;
            cell_map rev = reverse(g.space, *g.map);
            auto cls = classify_cells(g.space, *g.map);
            atom_set m = cls.critical;
            if (m.empty()) continue;
            // region of weak attraction under the reversed map = cells whose
            // reversed omega meets M = repulsion region of M under the map
            auto r = attraction_analysis(g.space, rev, m);
            atom_set expect(g.space.atom_count());
            for (std::size_t c = 0; c < rev.cell_count(); ++c)
                if (omega_fixpoint_oracle(g.space, rev, static_cast<int>(c)).intersects(m))
                    expect.insert(g.space.tops()[c]);
            CHECK(r.region_weak == expect);
        }
    }
}

TEST_CASE("omega0_end") {
    auto line = gallery("line5shift");
    SECTION("the shift walk reaches the unique end") {
        auto walk = greedy_walk(line.space, *line.map, 0, 8);
        auto r = omega0_end(line.space, *line.map, *line.twr, walk);
        CHECK(r.end_index == 0);
    }
    SECTION("twosinks walks split by side") {
        auto two = gallery("twosinks");
        auto es = end_space(two.space, *two.twr);
        REQUIRE(es.ends.size() == 2);
        auto left = make_orbit(two.space, *two.map, {2, 1, 0, 0});
        auto right = make_orbit(two.space, *two.map, {2, 3, 4, 4});
        CHECK(end_label(two.space, es, es.ends[static_cast<std::size_t>(
                                          omega0_end(two.space, *two.map, *two.twr, left)
                                              .end_index)]) == "end:c0");
        CHECK(end_label(two.space, es, es.ends[static_cast<std::size_t>(
                                          omega0_end(two.space, *two.map, *two.twr, right)
                                              .end_index)]) == "end:c4");
    }
    SECTION("a walk that stops short of the throat raises InsufficientHorizon") {
        auto two = gallery("twosinks");
        auto walk = make_orbit(two.space, *two.map, {2, 1});  // ends outside the last level
        CHECK_THROWS_AS(omega0_end(two.space, *two.map, *two.twr, walk), error);
    }
    SECTION("invalid walks are rejected") {
        CHECK_THROWS_AS(make_orbit(line.space, *line.map, {0, 2}), error);
        CHECK_THROWS_AS(make_orbit(line.space, *line.map, {}), error);
    }
}

TEST_CASE("basin_decomposition") {
    SECTION("line5shift: one basin, nothing ambiguous") {
        auto f = gallery("line5shift");
        auto r = basin_decomposition(f.space, *f.map, *f.twr);
        REQUIRE(r.basins.size() == 1);
        CHECK(r.basins[0] == f.space.top_set());
        CHECK(r.ambiguous.empty());
    }
    SECTION("twosinks: the middle cell is ambiguous") {
        auto f = gallery("twosinks");
        auto r = basin_decomposition(f.space, *f.map, *f.twr);
        REQUIRE(r.basins.size() == 2);
        CHECK(r.basins[0] == named(f.space, {"c0", "c1"}));
        CHECK(r.basins[1] == named(f.space, {"c3", "c4"}));
        CHECK(r.ambiguous == named(f.space, {"c2"}));
    }
    SECTION("morse-circle: the repeller keeps only itself") {
        auto f = gallery("morse-circle", 8);
        auto r = basin_decomposition(f.space, *f.map, *f.twr);
        REQUIRE(r.basins.size() == 2);
        atom_set all_but_top = f.space.top_set();
        all_but_top.erase(f.space.atom("c4"));
        CHECK(r.basins[0] == all_but_top);
        CHECK(r.basins[1] == named(f.space, {"c4"}));
        CHECK(r.ambiguous.empty());
    }
    SECTION("single-valued maps have no ambiguity and partition the tops") {
        for (const auto& f : map_gallery()) {
            bool single = true;
            for (const auto& img : f.map->images)
                if (img.size() > 1) single = false;
            auto r = basin_decomposition(f.space, *f.map, *f.twr);
            atom_set covered = r.ambiguous;
            for (const auto& b : r.basins) {
                CHECK_FALSE(b.intersects(covered));
                covered |= b;
            }
            CHECK(covered == f.space.top_set());
            if (!single) continue;
            CHECK(r.ambiguous.empty());
            // cells with equal omega sets share a basin
            auto basin_of = [&](int atom) {
                for (std::size_t b = 0; b < r.basins.size(); ++b)
                    if (r.basins[b].contains(atom)) return static_cast<int>(b);
                return -1;
            };
            for (std::size_t c = 0; c < f.map->cell_count(); ++c)
                for (std::size_t e = c + 1; e < f.map->cell_count(); ++e) {
                    atom_set oc = omega_limit(f.space, *f.map, static_cast<int>(c));
                    atom_set oe = omega_limit(f.space, *f.map, static_cast<int>(e));
                    if (oc == oe && !oc.empty())
                        CHECK(basin_of(f.space.tops()[c]) == basin_of(f.space.tops()[e]));
                }
        }
    }
}
