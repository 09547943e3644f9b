#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraceig/grid.hpp"

using namespace fraceig;

TEST_CASE("1D grid nodes are cell centers") {
    Grid g = build_grid_1d(0.0, 1.0, 4);
    CHECK(g.h == doctest::Approx(0.25));
    REQUIRE(g.size() == 4);
    CHECK(g.nodes[0].x == doctest::Approx(0.125));
    CHECK(g.nodes[1].x == doctest::Approx(0.375));
    CHECK(g.nodes[2].x == doctest::Approx(0.625));
    CHECK(g.nodes[3].x == doctest::Approx(0.875));
}

TEST_CASE("1D symmetry map pairs reflected nodes") {
    Grid g = build_grid_1d(-1.0, 1.0, 4);
    REQUIRE(g.has_symmetry());
    CHECK(g.symmetry_map[0] == 3);
    CHECK(g.symmetry_map[1] == 2);
    CHECK(g.symmetry_map[2] == 1);
    CHECK(g.symmetry_map[3] == 0);
}

TEST_CASE("1D grid rejects bad input") {
    CHECK_THROWS_AS(build_grid_1d(1.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_1d(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("2D grid: full unit square") {
    Grid g = build_grid_2d({0, 0, 1, 1}, 0.5, builtin_mask("all", {0, 0, 1, 1}), "all");
    REQUIRE(g.size() == 4);
    for (const auto& n : g.nodes) {
        CHECK((n.x == doctest::Approx(0.25) || n.x == doctest::Approx(0.75)));
        CHECK((n.y == doctest::Approx(0.25) || n.y == doctest::Approx(0.75)));
    }
    CHECK(g.has_symmetry());
}

TEST_CASE("2D grid: masked single cell and errors") {
    auto one_cell = [](const Point& p) { return p.x < 0.5 && p.y < 0.5; };
    Grid g = build_grid_2d({0, 0, 1, 1}, 0.5, one_cell, "custom");
    CHECK(g.size() == 1);
    CHECK_FALSE(g.has_symmetry());

    CHECK_THROWS_AS(build_grid_2d({0, 0, 1, 1}, 0.3, builtin_mask("all", {0, 0, 1, 1})),
                    std::invalid_argument);
    auto nothing = [](const Point&) { return false; };
    CHECK_THROWS_AS(build_grid_2d({0, 0, 1, 1}, 0.5, nothing), std::invalid_argument);
}

TEST_CASE("lshape mask is not centrally symmetric") {
    Box box{0, 0, 1, 1};
    Grid g = build_grid_2d(box, 0.25, builtin_mask("lshape", box), "lshape");
    CHECK(g.size() == 12);
    CHECK_FALSE(g.has_symmetry());

    Grid d = build_grid_2d(box, 0.25, builtin_mask("disk", box), "disk");
    CHECK(d.has_symmetry());
    CHECK(d.size() < 16);
}

TEST_CASE("reflect") {
    Grid g = build_grid_1d(-1.0, 1.0, 4);
    GridFunction u(4);
    u << 1, 2, 3, 4;
    GridFunction v = reflect(g, u);
    CHECK(v[0] == 4);
    CHECK(v[1] == 3);
    CHECK(v[2] == 2);
    CHECK(v[3] == 1);
    // involution
    GridFunction w = reflect(g, v);
    CHECK((w - u).lpNorm<Eigen::Infinity>() == 0.0);
    // symmetric functions are fixed points
    GridFunction s(4);
    s << 1, 2, 2, 1;
    CHECK((reflect(g, s) - s).lpNorm<Eigen::Infinity>() == 0.0);

    Grid nos = build_grid_2d({0, 0, 1, 1}, 0.5,
                             [](const Point& p) { return p.x < 0.5 && p.y < 0.5; });
    GridFunction one(1);
    one << 1.0;
    CHECK_THROWS_AS(reflect(nos, one), std::logic_error);
}
