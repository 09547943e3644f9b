#include "fraceig/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "fraceig/rng.hpp"

namespace fraceig {

void normalize_eigenfunction(const Grid& g, GridFunction& u, double p) {
    // Two passes tighten the norm to the last bit.
    for (int pass = 0; pass < 2; ++pass) {
        const double np = lp_norm_p(g, u, p);
        if (np == 0.0) throw std::domain_error("normalize: zero function");
        u /= std::pow(np, 1.0 / p);
    }
    int imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    if (u[imax] < 0.0) u = -u;
}

namespace {

GridFunction random_init(const Grid& g, const SolveOptions& opts) {
    auto rng = make_rng(opts.seed, 0x1217);
    GridFunction u(g.size());
    if (opts.mode == SolveOptions::Mode::Odd) {
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (int i = 0; i < g.size(); ++i) u[i] = d(rng);
    } else {
        std::uniform_real_distribution<double> d(0.5, 1.5);
        for (int i = 0; i < g.size(); ++i) u[i] = d(rng);
    }
    return u;
}

EigenResult run(const Assembly& A, const SolveOptions& opts, const GridFunction* init) {
    if (A.size() == 0) throw std::invalid_argument("minimize_rayleigh: empty grid");
    const bool odd = opts.mode == SolveOptions::Mode::Odd;
    if (odd && !A.grid.has_symmetry())
        throw std::logic_error("solve_odd: grid has no symmetry map");
    const double p = A.kernel.p;
    const double hn = A.cell_measure();

    auto project = [&](GridFunction& v) {
        if (odd) {
            v = 0.5 * (v - reflect(A.grid, v));
        } else if (opts.enforce_sign) {
            v = v.cwiseAbs();
            // The first mode is symmetric on symmetric grids; keeping the
            // iterate there makes mirror-pair differences exactly zero, which
            // removes the cusp directions of |.|^p for p < 2.
            if (A.grid.has_symmetry()) v = 0.5 * (v + reflect(A.grid, v));
        }
    };

    GridFunction u = init ? *init : random_init(A.grid, opts);
    if (init && init->lpNorm<Eigen::Infinity>() == 0.0)
        throw std::invalid_argument("minimize_rayleigh: zero initial iterate");
    project(u);
    if (u.lpNorm<Eigen::Infinity>() == 0.0) {
        // projection annihilated the init; fall back to a random draw
        u = random_init(A.grid, opts);
        project(u);
    }
    {
        double np = lp_norm_p(A.grid, u, p);
        u /= std::pow(np, 1.0 / p);
    }

    EigenResult res;
    double R = rayleigh(A, u);
    res.history.push_back(R);
    double tau = opts.step0;
    GridFunction u_prev, g_prev;
    int stagnant = 0;

    long it = 0;
    for (; it < opts.max_iters; ++it) {
        GridFunction g = rayleigh_gradient(A, u);
        res.grad_norm = g.lpNorm<Eigen::Infinity>();
        if (res.grad_norm <= opts.tol) {
            res.converged = true;
            break;
        }
        // Barzilai-Borwein step proposal; falls back to growing the last
        // accepted step when curvature information is unusable.
        if (u_prev.size() == u.size()) {
            const GridFunction du = u - u_prev;
            const GridFunction dg = g - g_prev;
            const double denom = du.dot(dg);
            const double bb = denom > 0.0 ? du.squaredNorm() / denom : 0.0;
            tau = (std::isfinite(bb) && bb > 0.0) ? bb
                                                  : std::min(tau / opts.backtrack, 1e12);
        } else {
            tau = std::min(tau / opts.backtrack, 1e12);
        }
        const double g2 = g.squaredNorm();
        bool accepted = false;
        GridFunction v;
        double Rv = R;
        while (tau > 1e-20) {
            v = u - tau * g;
            project(v);
            const double np = lp_norm_p(A.grid, v, p);
            if (np > 0.0 && std::isfinite(np)) {
                Rv = energy(A, v).total / np;
                // the ulp-level slack keeps the search alive once the required
                // decrease falls below the rounding noise of R itself
                const double slack = 8.0 * std::numeric_limits<double>::epsilon() * R;
                if (std::isfinite(Rv) && Rv <= R + slack - opts.armijo * tau * g2) {
                    v /= std::pow(np, 1.0 / p);
                    accepted = true;
                    break;
                }
            }
            tau *= opts.backtrack;
        }
        if (!accepted) break;  // no descent direction left at this precision
        u_prev = u;
        g_prev = g;
        if ((v - u).lpNorm<Eigen::Infinity>() == 0.0) {
            // the accepted step rounds to no change; stop once this repeats
            if (++stagnant >= 20) break;
        } else {
            stagnant = 0;
        }
        u = v;
        R = Rv;
        res.history.push_back(R);
    }
    res.iterations = it;
    res.lambda = R;
    normalize_eigenfunction(A.grid, u, p);
    res.u = u;
    // Pointwise defect of -Lu = lambda phi_p(u), relative to lambda.
    GridFunction Lu = apply_operator(A, u);
    double defect = 0.0;
    for (int i = 0; i < A.size(); ++i)
        defect = std::max(defect, std::abs(-hn * Lu[i] - R * hn * phi_p(u[i], p)));
    res.residual = defect / R;
    return res;
}

}  // namespace

EigenResult minimize_rayleigh(const Assembly& A, const SolveOptions& opts,
                              const GridFunction* init) {
    return run(A, opts, init);
}

EigenResult solve_odd(const Assembly& A, SolveOptions opts) {
    opts.mode = SolveOptions::Mode::Odd;
    opts.enforce_sign = false;
    EigenResult res = run(A, opts, nullptr);
    if (!(res.u.maxCoeff() > 0.0 && res.u.minCoeff() < 0.0))
        throw std::runtime_error("solve_odd: mode did not change sign");
    return res;
}

OracleResult dense_oracle_p2(const Assembly& A) {
    if (A.kernel.p != 2.0)
        throw std::invalid_argument("dense_oracle_p2: requires p = 2");
    const int N = A.size();
    const double hn = A.cell_measure();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j, ++idx) {
            const double w = A.pair_w[idx];
            M(i, j) = M(j, i) = -2.0 * w / hn;
            M(i, i) += 2.0 * w / hn;
            M(j, j) += 2.0 * w / hn;
        }
        M(i, i) += A.tails[i] / hn;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_oracle_p2: eigendecomposition failed");
    OracleResult out;
    out.eigenvalues = es.eigenvalues();
    out.lambda_min = es.eigenvalues()[0];
    out.vector = es.eigenvectors().col(0);
    normalize_eigenfunction(A.grid, out.vector, 2.0);
    if (A.grid.has_symmetry()) {
        // Restrict to the odd subspace spanned by (e_i - e_{sigma(i)})/sqrt(2).
        std::vector<int> lead;
        for (int i = 0; i < N; ++i)
            if (i < A.grid.symmetry_map[i]) lead.push_back(i);
        const int m = static_cast<int>(lead.size());
        if (m > 0) {
            Eigen::MatrixXd Modd(m, m);
            for (int a = 0; a < m; ++a) {
                const int i = lead[a], si = A.grid.symmetry_map[i];
                for (int b = 0; b < m; ++b) {
                    const int j = lead[b], sj = A.grid.symmetry_map[j];
                    Modd(a, b) = 0.5 * (M(i, j) - M(i, sj) - M(si, j) + M(si, sj));
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eso(Modd);
            out.lambda_min_odd = eso.eigenvalues()[0];
        }
    }
    return out;
}

double residual(const Assembly& A, const EigenResult& res) {
    if (res.u.lpNorm<Eigen::Infinity>() == 0.0)
        throw std::domain_error("residual: zero eigenfunction");
    const double p = A.kernel.p;
    const double hn = A.cell_measure();
    auto rng = make_rng(0x5e51dULL, 0x40);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 64; ++trial) {
        GridFunction eta(A.size());
        for (int i = 0; i < A.size(); ++i) eta[i] = d(rng);
        eta /= eta.lpNorm<Eigen::Infinity>();
        KahanSum rhs;
        for (int i = 0; i < A.size(); ++i) rhs.add(phi_p(res.u[i], p) * eta[i]);
        const double defect =
            std::abs(form(A, res.u, eta) - res.lambda * hn * rhs.value());
        worst = std::max(worst, defect / res.lambda);
    }
    return worst;
}

}  // namespace fraceig
