#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "efl/cell_map_builder.hpp"
#include "efl/gallery.hpp"
#include "efl/flow_completion.hpp"

using namespace efl;

TEST_CASE("polynomial parsing and calculus") {
    auto p = parse_polynomial("x^4 - 2*x^2 + 1");
    CHECK(p.eval(1.0, 0.0) == Catch::Approx(0.0));
    CHECK(p.eval(0.0, 0.0) == Catch::Approx(1.0));
    CHECK(p.eval(2.0, 0.0) == Catch::Approx(9.0));
    auto dp = p.derivative(0);
    CHECK(dp.eval(2.0, 0.0) == Catch::Approx(4 * 8 - 4 * 2));

    auto q = parse_polynomial("4*x*y^2 - 0.5*y + x");
    CHECK(q.eval(2.0, 3.0) == Catch::Approx(4 * 2 * 9 - 1.5 + 2));
    CHECK(q.derivative(1).eval(2.0, 3.0) == Catch::Approx(4 * 2 * 6 - 0.5));

    CHECK_THROWS_AS(parse_polynomial("x^7"), error);
    CHECK_THROWS_AS(parse_polynomial(""), error);
    CHECK_THROWS_AS(parse_polynomial("x^"), error);
    CHECK_THROWS_AS(parse_polynomial("2 +"), error);
}

TEST_CASE("time_tau_map") {
    SECTION("exponential decay matches the closed form") {
        auto field = vector_field::linear1(-1.0);
        approx_params params{std::log(2.0), 16, 0.0};
        vec2 out = time_tau_map(field, params, {1.0, 0.0});
        CHECK(out.x == Catch::Approx(0.5).margin(1e-6));
    }
    SECTION("zero field is the identity") {
        auto field = vector_field::linear1(0.0);
        approx_params params{1.0, 4, 0.0};
        vec2 out = time_tau_map(field, params, {0.37, 0.0});
        CHECK(out.x == Catch::Approx(0.37));
    }
    SECTION("rotation preserves the norm") {
        auto field = vector_field::linear2(0.0, -1.0, 1.0, 0.0);
        approx_params params{0.9, 32, 0.0};
        for (double a : {0.2, 1.0, 1.7}) {
            vec2 out = time_tau_map(field, params, {a, 0.5});
            double n0 = std::sqrt(a * a + 0.25);
            CHECK(std::sqrt(out.x * out.x + out.y * out.y) == Catch::Approx(n0).margin(1e-6));
        }
    }
    SECTION("blow-up raises NonFinite") {
        auto field = vector_field::custom(parse_polynomial("x^2"), {}, 1);
        approx_params params{50.0, 400, 0.0};
        CHECK_THROWS_AS(time_tau_map(field, params, {10.0, 0.0}), error);
    }
}

TEST_CASE("build_cell_map on the contraction") {
    auto field = vector_field::linear1(-1.0);
    grid_spec grid{{-1.0}, {1.0}, {4}};
    approx_params params{1.0, 8, 0.0};
    auto [space, map] = build_cell_map(field, grid, params);
    CHECK(space.tops().size() == 4);
    // outer cells map strictly into the inner cells
    CHECK(map.images[0] == std::vector<int>{1});
    CHECK(map.images[3] == std::vector<int>{2});
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK_FALSE(map.exit[c]);
        CHECK_FALSE(map.images[c].empty());
        for (int d : map.images[c]) CHECK((d == 1 || d == 2));
    }
}

TEST_CASE("zero field with bloat under half a cell width is the identity relation") {
    auto field = vector_field::linear1(0.0);
    grid_spec grid{{-1.0}, {1.0}, {8}};
    approx_params params{1.0, 4, 0.1};  // cell width 0.25
    auto [space, map] = build_cell_map(field, grid, params);
    for (std::size_t c = 0; c < 8; ++c) {
        CHECK(map.images[c] == std::vector<int>{static_cast<int>(c)});
        CHECK_FALSE(map.exit[c]);
    }
    grid_spec grid2{{-1.0, -1.0}, {1.0, 1.0}, {4, 4}};
    auto field2 = vector_field::linear2(0.0, 0.0, 0.0, 0.0);
    approx_params params2{1.0, 4, 0.2};  // cell width 0.5
    auto [space2, map2] = build_cell_map(field2, grid2, params2);
    for (std::size_t c = 0; c < 16; ++c)
        CHECK(map2.images[c] == std::vector<int>{static_cast<int>(c)});
}

TEST_CASE("build_cell_map is monotone in bloat") {
    grid_spec grid{{-2.0, -2.0}, {2.0, 2.0}, {8, 8}};
    auto field = vector_field::radial();
    auto [s1, small] = build_cell_map(field, grid, approx_params{0.3, 8, 0.05});
    auto [s2, big] = build_cell_map(field, grid, approx_params{0.3, 8, 0.25});
    REQUIRE(small.cell_count() == big.cell_count());
    for (std::size_t c = 0; c < small.cell_count(); ++c) {
        CHECK(small.exit[c] == big.exit[c]);
        for (int d : small.images[c])
            CHECK(std::binary_search(big.images[c].begin(), big.images[c].end(), d));
    }
}

TEST_CASE("sampled trajectories stay inside the combinatorial walk tube") {
    // with bloat at least cellwidth * Lip(phi_tau) the true trajectory of a
    // sampled start is covered by the iterated image of its start cell
    const double tau = 0.5;
    auto field = vector_field::linear1(-1.0);
    grid_spec grid{{-1.0}, {1.0}, {8}};
    const double lip = std::exp(-tau);  // contraction rate of the closed form
    approx_params params{tau, 8, grid.width(0) * lip};
    auto [space, map] = build_cell_map(field, grid, params);
    auto owner = [&](double x) {
        int k = static_cast<int>(std::floor((x + 1.0) / grid.width(0)));
        return std::clamp(k, 0, 7);
    };
    for (double x0 : {-0.99, -0.61, -0.3, 0.12, 0.47, 0.93}) {
        std::set<int> tube{owner(x0)};
        double truth = x0;
        for (int k = 1; k <= 5; ++k) {
            std::set<int> next;
            for (int c : tube)
                for (int d : map.images[static_cast<std::size_t>(c)]) next.insert(d);
            tube = next;
            truth *= std::exp(-tau);
            CHECK(tube.count(owner(truth)) == 1);
        }
    }
}

TEST_CASE("radial cycle grid: critical origin cluster, periodic annulus") {
    auto f = gallery("limit-cycle-grid", 32);
    CHECK(f.space.tops().size() == 1024);
    auto cls = classify_cells(f.space, *f.map);
    // the four cells having the origin as a corner are critical
    for (int idx : {15 * 32 + 15, 15 * 32 + 16, 16 * 32 + 15, 16 * 32 + 16})
        CHECK(cls.critical.contains(f.space.tops()[static_cast<std::size_t>(idx)]));
    // every critical cell hugs the origin, none sit on the unit circle
    cls.critical.for_each([&](int a) {
        int idx = cell_index(f.space, a);
        double cx = -2.0 + (idx / 32 + 0.5) * 0.125;
        double cy = -2.0 + (idx % 32 + 0.5) * 0.125;
        CHECK(std::sqrt(cx * cx + cy * cy) < 0.5);
    });
    // a cell on the unit circle lies on a combinatorial cycle
    int annulus = 24 * 32 + 16;  // center near (1.06, 0.06)
    CHECK(cls.periodic.contains(f.space.tops()[static_cast<std::size_t>(annulus)]));
    CHECK_FALSE(cls.critical.contains(f.space.tops()[static_cast<std::size_t>(annulus)]));
}

TEST_CASE("gallery") {
    SECTION("all fixtures are constructible and named") {
        CHECK(gallery_names().size() >= 9);
        for (const auto& n : gallery_names()) {
            auto f = gallery(n, n == "limit-cycle-grid" ? 8 : -1);
            CHECK(f.space.atom_count() > 0);
        }
    }
    SECTION("line5shift is the 9-atom shift") {
        auto f = gallery("line5shift");
        CHECK(f.space.atom_count() == 9);
        REQUIRE(f.map.has_value());
        CHECK(f.map->images[0] == std::vector<int>{1});
    }
    SECTION("bintree(3) has eight ends") {
        auto f = gallery("bintree", 3);
        REQUIRE(f.twr.has_value());
        CHECK(end_space(f.space, *f.twr).ends.size() == 8);
    }
    SECTION("morse-circle(16) completes") {
        auto f = gallery("morse-circle", 16);
        CHECK(check_thm66(f.space, *f.map).verdict.complete());
    }
    SECTION("unknown fixtures are errors") {
        CHECK_THROWS_AS(gallery("nope"), error);
        CHECK_THROWS_AS(gallery("morse-circle", 7), error);
    }
    SECTION("fixtures are reproducible bit for bit") {
        auto a = gallery("limit-cycle-grid", 16);
        auto b = gallery("limit-cycle-grid", 16);
        CHECK(same_space(a.space, b.space));
        CHECK(a.map->images == b.map->images);
        CHECK(a.map->exit == b.map->exit);
        CHECK(a.twr->levels.size() == b.twr->levels.size());
        for (std::size_t k = 0; k < a.twr->levels.size(); ++k)
            CHECK(a.twr->levels[k] == b.twr->levels[k]);
    }
}

TEST_CASE("grid and field validation") {
    CHECK_THROWS_AS(build_cell_map(vector_field::radial(), grid_spec{{-1}, {1}, {4}},
                                   approx_params{}),
                    error);  // dimension mismatch
    CHECK_THROWS_AS(build_cell_map(vector_field::linear1(-1), grid_spec{{-1}, {1}, {1}},
                                   approx_params{}),
                    error);  // resolution below 2
    CHECK_THROWS_AS(build_cell_map(vector_field::linear1(-1), grid_spec{{1}, {-1}, {4}},
                                   approx_params{}),
                    error);  // empty box
}
