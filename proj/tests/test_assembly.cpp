#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraceig/assembly.hpp"

using namespace fraceig;

namespace {

// Composite-Simpson tensor quadrature of the cell-pair integral; the
// integrand is smooth on non-adjacent cells.
double cell_pair_quadrature(double xi, double xj, double h, double sp, int m = 1024) {
    auto inner = [&](double x) {
        // Simpson over the second cell at fixed x
        const double a = xj - h / 2, b = xj + h / 2;
        const double dy = (b - a) / m;
        double s = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double y = a + k * dy;
            const double f = std::pow(std::abs(x - y), -(1.0 + sp));
            s += (k == 0 || k == m) ? f : (k % 2 ? 4.0 * f : 2.0 * f);
        }
        return s * dy / 3.0;
    };
    const double a = xi - h / 2, b = xi + h / 2;
    const double dx = (b - a) / m;
    double s = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double x = a + k * dx;
        const double f = inner(x);
        s += (k == 0 || k == m) ? f : (k % 2 ? 4.0 * f : 2.0 * f);
    }
    return s * dx / 3.0;
}

}  // namespace

TEST_CASE("collocation pair weight, N=2 hand value") {
    Grid g = build_grid_1d(0.0, 1.0, 2);
    Kernel k = make_fractional_kernel(0.5, 2.0, 1);
    Assembly A = assemble(g, k);
    CHECK(A.pair_w.size() == 1);
    CHECK(A.w(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(A.w(1, 0) == A.w(0, 1));
    CHECK(A.w(0, 0) == 0.0);
}

TEST_CASE("pair table holds exactly N(N-1)/2 entries") {
    Grid g = build_grid_1d(-1.0, 1.0, 17);
    Kernel k = make_fractional_kernel(0.3, 1.5, 1);
    Assembly A = assemble(g, k);
    CHECK(A.pair_w.size() == 17 * 16 / 2);
}

TEST_CASE("1D exact tails") {
    // Omega = (0,1), sp = 1, center node: T = (0.5^-1 + 0.5^-1)/1 = 4
    Grid g = build_grid_1d(0.0, 1.0, 5);
    Kernel k = make_fractional_kernel(0.5, 2.0, 1);
    auto t = assemble_tails(g, k);
    CHECK(t[2] == doctest::Approx(2.0 * g.h * 4.0).epsilon(1e-14));
    // symmetry under reflection
    for (int i = 0; i < g.size(); ++i)
        CHECK(t[i] == doctest::Approx(t[g.symmetry_map[i]]).epsilon(1e-14));
}

TEST_CASE("positivity of all weights") {
    Grid g = build_grid_1d(-1.0, 1.0, 16);
    for (double s : {0.3, 0.7})
        for (double p : {1.5, 2.0, 3.0}) {
            Assembly A = assemble(g, make_fractional_kernel(s, p, 1));
            for (double w : A.pair_w) CHECK(w > 0.0);
            for (double t : A.tails) CHECK(t > 0.0);
        }
}

TEST_CASE("exact c^{n-sp} scaling of weights and tails") {
    const int N = 16;
    for (double s : {0.3, 0.7})
        for (double p : {1.5, 2.0, 3.0}) {
            Kernel k = make_fractional_kernel(s, p, 1);
            Assembly A1 = assemble(build_grid_1d(0.0, 1.0, N), k);
            Assembly A2 = assemble(build_grid_1d(0.0, 2.0, N), k);
            const double factor = std::pow(2.0, 1.0 - s * p);
            for (std::size_t i = 0; i < A1.pair_w.size(); ++i)
                CHECK(A2.pair_w[i] ==
                      doctest::Approx(factor * A1.pair_w[i]).epsilon(1e-13));
            for (int i = 0; i < N; ++i)
                CHECK(A2.tails[i] == doctest::Approx(factor * A1.tails[i]).epsilon(1e-13));
        }
}

TEST_CASE("relabeling invariance on a symmetric dyadic grid") {
    Grid g = build_grid_1d(-1.0, 1.0, 8);
    Kernel k = make_fractional_kernel(0.5, 3.0, 1);
    Assembly A = assemble(g, k);
    const auto& sig = g.symmetry_map;
    for (int i = 0; i < g.size(); ++i) {
        CHECK(A.tails[i] == A.tails[sig[i]]);
        for (int j = i + 1; j < g.size(); ++j)
            CHECK(A.w(i, j) == A.w(sig[i], sig[j]));
    }
}

TEST_CASE("near-field closed form matches quadrature on non-adjacent cells") {
    const double h = 0.1;
    for (double sp : {0.6, 1.0, 1.4, 2.1}) {
        for (int gap : {2, 3, 7}) {
            const double d = gap * h;
            const double exact = cell_pair_integral_1d(d, h, sp);
            const double quad = cell_pair_quadrature(0.0, d, h, sp);
            CHECK(exact == doctest::Approx(quad).epsilon(1e-10));
        }
    }
}

TEST_CASE("near-field option replaces close-pair weights") {
    Grid g = build_grid_1d(0.0, 1.0, 8);
    Kernel k = make_fractional_kernel(0.4, 2.0, 1);  // sp = 0.8 < 1
    AssemblyOptions opts;
    opts.near_field_radius = 2;
    Assembly A = assemble(g, k, opts);
    Assembly B = assemble(g, k);
    CHECK(A.w(0, 1) != B.w(0, 1));
    CHECK(A.w(0, 2) != B.w(0, 2));
    CHECK(A.w(0, 3) == B.w(0, 3));
    CHECK(A.w(0, 2) ==
          doctest::Approx(cell_pair_integral_1d(2 * g.h, g.h, 0.8)).epsilon(1e-14));
    CHECK(A.scheme != B.scheme);
}

TEST_CASE("adjacent-cell integral diverges for sp >= 1") {
    Grid g = build_grid_1d(0.0, 1.0, 8);
    Kernel k = make_fractional_kernel(0.5, 2.0, 1);  // sp = 1
    AssemblyOptions opts;
    opts.near_field_radius = 1;
    CHECK_THROWS_AS(assemble(g, k, opts), std::overflow_error);
}

TEST_CASE("2D far-field identity against radial quadrature") {
    // int_{|y|>R} |y|^{-(2+sp)} dy = 2 pi R^{-sp} / sp
    for (double sp : {0.8, 1.6}) {
        const double R = 1.3;
        double q = 0.0;
        const int m = 400000;
        const double rmax = 4000.0;
        const double dr = (rmax - R) / m;
        for (int i = 0; i < m; ++i) {
            const double r = R + (i + 0.5) * dr;
            q += 2.0 * M_PI * std::pow(r, -(1.0 + sp)) * dr;
        }
        q += 2.0 * M_PI * std::pow(rmax, -sp) / sp;  // analytic remainder
        CHECK(q == doctest::Approx(2.0 * M_PI * std::pow(R, -sp) / sp).epsilon(1e-5));
    }
}

TEST_CASE("2D assembly: finite, positive, symmetric, exact dyadic scaling") {
    Box box{0, 0, 1, 1};
    Grid g = build_grid_2d(box, 0.25, builtin_mask("all", box), "all");
    Kernel k = make_fractional_kernel(0.4, 2.0, 2);
    Assembly A = assemble(g, k);
    for (double w : A.pair_w) CHECK(w > 0.0);
    for (double t : A.tails) CHECK(t > 0.0);
    for (int i = 0; i < g.size(); ++i)
        CHECK(A.tails[i] == doctest::Approx(A.tails[g.symmetry_map[i]]).epsilon(1e-13));

    Box box2{0, 0, 2, 2};
    Grid g2 = build_grid_2d(box2, 0.5, builtin_mask("all", box2), "all");
    Assembly A2 = assemble(g2, k);
    const double factor = std::pow(2.0, 2.0 - 0.4 * 2.0);
    for (std::size_t i = 0; i < A.pair_w.size(); ++i)
        CHECK(A2.pair_w[i] == doctest::Approx(factor * A.pair_w[i]).epsilon(1e-13));
    for (int i = 0; i < g.size(); ++i)
        CHECK(A2.tails[i] == doctest::Approx(factor * A.tails[i]).epsilon(1e-13));
}

TEST_CASE("2D tail quadrature refines towards a stable value") {
    Box box{0, 0, 1, 1};
    Grid g = build_grid_2d(box, 0.5, builtin_mask("all", box), "all");
    Kernel k = make_fractional_kernel(0.4, 2.0, 2);
    AssemblyOptions coarse, fine, finer;
    coarse.tail_refine = 2;
    fine.tail_refine = 8;
    finer.tail_refine = 16;
    auto tc = assemble_tails(g, k, coarse);
    auto tf = assemble_tails(g, k, fine);
    auto tff = assemble_tails(g, k, finer);
    for (int i = 0; i < g.size(); ++i)
        CHECK(std::abs(tff[i] - tf[i]) < std::abs(tff[i] - tc[i]) + 1e-15);
}

TEST_CASE("dimension mismatch is rejected") {
    Grid g = build_grid_1d(0.0, 1.0, 4);
    Kernel k = make_fractional_kernel(0.5, 2.0, 2);
    CHECK_THROWS_AS(assemble(g, k), std::invalid_argument);
}
