#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fraceig/rng.hpp"
#include "fraceig/solver.hpp"

using namespace fraceig;

namespace {

Assembly make_1d(double a, double b, int N, double s, double p) {
    return assemble(build_grid_1d(a, b, N), make_fractional_kernel(s, p, 1));
}

}  // namespace

TEST_CASE("p=2 solver matches the dense oracle") {
    Assembly A = make_1d(-1.0, 1.0, 64, 0.5, 2.0);
    SolveOptions opts;
    EigenResult res = minimize_rayleigh(A, opts);
    OracleResult orc = dense_oracle_p2(A);
    CHECK(res.converged);
    CHECK(std::abs(res.lambda - orc.lambda_min) <= 1e-8 * orc.lambda_min);
    CHECK(rayleigh(A, orc.vector) == doctest::Approx(orc.lambda_min).epsilon(1e-12));
}

TEST_CASE("oracle matrix reproduces the energy") {
    Assembly A = make_1d(0.0, 1.0, 12, 0.4, 2.0);
    OracleResult orc = dense_oracle_p2(A);
    const double hn = A.cell_measure();
    auto rng = make_rng(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    // rebuild M from the public surface to check <Mu,u> h^n = energy
    const int N = A.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j)
            if (i != j) {
                M(i, j) = -2.0 * A.w(i, j) / hn;
                M(i, i) += 2.0 * A.w(i, j) / hn;
            }
        M(i, i) += A.tails[i] / hn;
    }
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction u(N);
        for (int i = 0; i < N; ++i) u[i] = d(rng);
        CHECK(hn * u.dot(M * u) == doctest::Approx(energy(A, u).total).epsilon(1e-12));
    }
    CHECK(orc.lambda_min <= orc.eigenvalues[1]);

    Assembly A3 = make_1d(0.0, 1.0, 4, 0.4, 3.0);
    CHECK_THROWS_AS(dense_oracle_p2(A3), std::invalid_argument);
}

TEST_CASE("single-node grid solves immediately") {
    Assembly A = make_1d(0.0, 1.0, 1, 0.5, 2.5);
    SolveOptions opts;
    EigenResult res = minimize_rayleigh(A, opts);
    CHECK(res.converged);
    CHECK(res.iterations <= 1);
    CHECK(res.lambda == doctest::Approx(A.tails[0] / A.grid.h).epsilon(1e-14));

    Assembly A2 = make_1d(0.0, 1.0, 1, 0.5, 2.0);
    OracleResult orc = dense_oracle_p2(A2);
    CHECK(orc.lambda_min == doctest::Approx(A2.tails[0] / A2.grid.h).epsilon(1e-14));
}

TEST_CASE("result invariants: normalization, history, positivity") {
    Assembly A = make_1d(-1.0, 1.0, 32, 0.6, 2.5);
    SolveOptions opts;
    opts.seed = 3;
    EigenResult res = minimize_rayleigh(A, opts);
    CHECK(res.converged);
    CHECK(res.lambda > 0.0);
    CHECK(std::abs(lp_norm_p(A.grid, res.u, 2.5) - 1.0) <= 1e-14);
    for (std::size_t i = 1; i < res.history.size(); ++i)
        CHECK(res.history[i] <= res.history[i - 1] * (1.0 + 1e-14));
    CHECK(res.u.minCoeff() > 0.0);  // discrete strong positivity of the first mode
}

TEST_CASE("seeds agree for p=3 (proportionality of minimizers)") {
    Assembly A = make_1d(-1.0, 1.0, 24, 0.5, 3.0);
    std::vector<EigenResult> runs;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SolveOptions opts;
        opts.seed = seed;
        runs.push_back(minimize_rayleigh(A, opts));
        CHECK(runs.back().converged);
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
        CHECK(std::abs(runs[i].lambda - runs[0].lambda) <= 1e-8 * runs[0].lambda);
        CHECK((runs[i].u - runs[0].u).lpNorm<Eigen::Infinity>() <= 1e-6);
    }
}

TEST_CASE("odd mode: oracle match, exact antisymmetry, strict gap") {
    Assembly A = make_1d(-1.0, 1.0, 64, 0.5, 2.0);
    SolveOptions opts;
    EigenResult first = minimize_rayleigh(A, opts);
    EigenResult odd = solve_odd(A, opts);
    OracleResult orc = dense_oracle_p2(A);
    REQUIRE(orc.lambda_min_odd.has_value());
    CHECK(std::abs(odd.lambda - *orc.lambda_min_odd) <= 1e-8 * *orc.lambda_min_odd);
    CHECK((odd.u + reflect(A.grid, odd.u)).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(odd.u.maxCoeff() > 0.0);
    CHECK(odd.u.minCoeff() < 0.0);
    CHECK(odd.lambda > first.lambda);

    Grid asym = build_grid_2d({0, 0, 1, 1}, 0.25,
                              builtin_mask("lshape", {0, 0, 1, 1}), "lshape");
    Assembly B = assemble(asym, make_fractional_kernel(0.5, 2.0, 2));
    CHECK_THROWS_AS(solve_odd(B, opts), std::logic_error);
}

TEST_CASE("weak-form residual") {
    Assembly A = make_1d(-1.0, 1.0, 32, 0.5, 2.0);
    OracleResult orc = dense_oracle_p2(A);
    EigenResult exact;
    exact.lambda = orc.lambda_min;
    exact.u = orc.vector;
    CHECK(residual(A, exact) <= 1e-10);

    SolveOptions opts;
    EigenResult res = minimize_rayleigh(A, opts);
    CHECK(residual(A, res) <= 1e-6);  // regression bound from converged solves

    // generic functions are far from eigenfunctions (sanity, loose)
    EigenResult junk;
    junk.lambda = orc.lambda_min;
    junk.u = GridFunction::LinSpaced(32, 0.1, 2.0);
    normalize_eigenfunction(A.grid, junk.u, 2.0);
    CHECK(residual(A, junk) > 1e-4);
}

TEST_CASE("exact discrete scaling of the first eigenvalue") {
    for (double s : {0.3, 0.7})
        for (double p : {1.5, 2.0, 3.0}) {
            SolveOptions opts;
            EigenResult r1 = minimize_rayleigh(make_1d(0.0, 1.0, 16, s, p), opts);
            EigenResult r2 = minimize_rayleigh(make_1d(0.0, 2.0, 16, s, p), opts);
            CHECK(std::abs(r2.lambda * std::pow(2.0, s * p) - r1.lambda) <=
                  1e-12 * r1.lambda);
        }
}

TEST_CASE("domain monotonicity at matched spacing") {
    SolveOptions opts;
    EigenResult small = minimize_rayleigh(make_1d(-1.0, 1.0, 16, 0.5, 2.0), opts);
    EigenResult big = minimize_rayleigh(make_1d(-2.0, 2.0, 32, 0.5, 2.0), opts);
    CHECK(small.lambda > big.lambda);
}

TEST_CASE("zero init is rejected; non-convergence is data") {
    Assembly A = make_1d(0.0, 1.0, 8, 0.5, 2.0);
    SolveOptions opts;
    GridFunction zero = GridFunction::Zero(8);
    CHECK_THROWS_AS(minimize_rayleigh(A, opts, &zero), std::invalid_argument);

    SolveOptions tight;
    tight.max_iters = 2;
    EigenResult res = minimize_rayleigh(A, tight);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 2);
}
