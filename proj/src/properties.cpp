#include "fraceig/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fraceig/rng.hpp"

namespace fraceig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void note_margin(PropertyReport& rep, double margin, double tolerance,
                 const std::string& what) {
    rep.worst_slack = std::min(rep.worst_slack, margin);
    if (margin < -tolerance) {
        ++rep.violations;
        if (rep.details.size() < 8)
            rep.details.push_back(what + " margin=" + fmt(margin));
    }
}

}  // namespace

PropertyReport check_hidden_convexity(const Assembly& A, int trials,
                                      std::span<const double> t_values,
                                      std::uint64_t seed) {
    PropertyReport rep;
    rep.name = "hidden_convexity";
    rep.worst_slack = kInf;
    const double p = A.kernel.p;
    const int N = A.size();
    std::uniform_real_distribution<double> d(0.1, 1.1);
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(trial));
        GridFunction u(N), v(N);
        for (int i = 0; i < N; ++i) u[i] = d(rng);
        for (int i = 0; i < N; ++i) v[i] = d(rng);
        const double Eu = energy(A, u).total;
        const double Ev = energy(A, v).total;
        const double slack = 1e-10 * std::max(Eu, Ev);
        for (double t : t_values) {
            GridFunction sigma(N);
            for (int i = 0; i < N; ++i)
                sigma[i] = std::pow((1.0 - t) * pow_abs(v[i], p) + t * pow_abs(u[i], p),
                                    1.0 / p);
            const double Es = energy(A, sigma).total;
            const double margin = (1.0 - t) * Ev + t * Eu - Es;
            ++rep.trials;
            note_margin(rep, margin, slack,
                        "trial=" + std::to_string(trial) + " t=" + fmt(t));
        }
    }
    rep.passed = rep.violations == 0;
    return rep;
}

PropertyReport check_truncation_inequality(int samples, double p, std::uint64_t seed) {
    PropertyReport rep;
    rep.name = "truncation_inequality";
    rep.worst_slack = kInf;
    auto rng = make_rng(seed, 0x7c);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < samples; ++i) {
        const double a = d(rng), b = d(rng);
        const double ap = std::max(a, 0.0), bp = std::max(b, 0.0);
        const double lhs = phi_p(a - b, p) * (ap - bp);
        const double rhs = pow_abs(ap - bp, p);
        ++rep.trials;
        note_margin(rep, lhs - rhs, 1e-12,
                    "a=" + fmt(a) + " b=" + fmt(b) + " p=" + fmt(p));
    }
    rep.passed = rep.violations == 0;
    return rep;
}

PropertyReport check_abs_decrease(const Assembly& A, int trials, std::uint64_t seed) {
    PropertyReport rep;
    rep.name = "abs_decrease";
    rep.worst_slack = kInf;
    const int N = A.size();
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = make_rng(seed, 0xab5000 + static_cast<std::uint64_t>(trial));
        GridFunction u(N);
        for (int i = 0; i < N; ++i) u[i] = d(rng);
        const double Eu = energy(A, u).total;
        const double Ea = energy(A, u.cwiseAbs()).total;
        const double margin = Eu - Ea;
        ++rep.trials;
        note_margin(rep, margin, 1e-12 * std::max(1.0, Eu),
                    "trial=" + std::to_string(trial));
        // Strictness whenever a positively weighted pair changes sign.
        bool mixed = false;
        std::size_t idx = 0;
        for (int i = 0; i < N && !mixed; ++i)
            for (int j = i + 1; j < N; ++j, ++idx)
                if (A.pair_w[idx] > 0.0 && u[i] * u[j] < 0.0) {
                    mixed = true;
                    break;
                }
        if (mixed && !(margin > 0.0)) {
            ++rep.violations;
            if (rep.details.size() < 8)
                rep.details.push_back("trial=" + std::to_string(trial) +
                                      " mixed-sign but not strict");
        }
    }
    rep.passed = rep.violations == 0;
    return rep;
}

PropertyReport check_proportionality(const Grid& g, const GridFunction& u1,
                                     const GridFunction& u2, double p, double tol) {
    if (u1.size() != g.size() || u2.size() != g.size())
        throw std::invalid_argument("check_proportionality: dimension mismatch");
    PropertyReport rep;
    rep.name = "proportionality";
    GridFunction a = u1, b = u2;
    normalize_eigenfunction(g, a, p);
    normalize_eigenfunction(g, b, p);
    const double dist = (a - b).lpNorm<Eigen::Infinity>();
    rep.trials = 1;
    rep.worst_slack = tol - dist;
    if (dist > tol) ++rep.violations;
    // Variance of the pointwise ratio where the denominator is resolvable.
    double mean = 0.0, m2 = 0.0;
    long n = 0;
    for (int i = 0; i < g.size(); ++i) {
        if (std::abs(b[i]) <= 1e-12) continue;
        const double r = a[i] / b[i];
        ++n;
        const double delta = r - mean;
        mean += delta / n;
        m2 += delta * (r - mean);
    }
    rep.details.push_back("sup_distance=" + fmt(dist));
    rep.details.push_back("ratio_variance=" + fmt(n > 1 ? m2 / (n - 1) : 0.0));
    rep.passed = rep.violations == 0;
    return rep;
}

PropertyReport check_first_mode_minimality(const Assembly& A, const EigenResult& res,
                                           int probes, std::uint64_t seed) {
    PropertyReport rep;
    rep.name = "first_mode_minimality";
    rep.worst_slack = kInf;
    const int N = A.size();
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double slack = 1e-10 * std::abs(res.lambda);
    if (!(res.lambda > 0.0)) {
        ++rep.violations;
        rep.details.push_back("nonpositive lambda=" + fmt(res.lambda));
    }
    for (int trial = 0; trial < probes; ++trial) {
        auto rng = make_rng(seed, 0xf1300 + static_cast<std::uint64_t>(trial));
        GridFunction phi(N);
        double norm = 0.0;
        do {
            for (int i = 0; i < N; ++i) phi[i] = d(rng);
            norm = phi.lpNorm<Eigen::Infinity>();
        } while (norm == 0.0);
        const double ray = rayleigh(A, phi);
        if (!(ray > 0.0)) {
            ++rep.violations;
            if (rep.details.size() < 8)
                rep.details.push_back("probe=" + std::to_string(trial) +
                                      " nonpositive rayleigh=" + fmt(ray));
        }
        ++rep.trials;
        note_margin(rep, ray - res.lambda, slack, "probe=" + std::to_string(trial));
    }
    rep.passed = rep.violations == 0;
    return rep;
}

std::vector<LevelDecayRow> level_decay_diagnostic(const Assembly& A, const GridFunction& u,
                                                  std::span<const double> k_values) {
    if (u.size() != A.size())
        throw std::invalid_argument("level_decay_diagnostic: dimension mismatch");
    if (!(u.minCoeff() >= 0.0) || u.maxCoeff() <= 0.0)
        throw std::invalid_argument("level_decay_diagnostic: u must be >= 0 and nonzero");
    const double hn = A.cell_measure();
    const double sp = A.kernel.s * A.kernel.p;
    const double eps = sp / (A.kernel.dim * (A.kernel.p - 1.0));
    std::vector<LevelDecayRow> table;
    for (double k : k_values) {
        if (!(k > 0.0))
            throw std::invalid_argument("level_decay_diagnostic: k must be > 0");
        LevelDecayRow row;
        row.k = k;
        KahanSum s;
        long count = 0;
        for (int i = 0; i < u.size(); ++i) {
            s.add(std::max(u[i] - k, 0.0));
            if (u[i] > k) ++count;
        }
        row.lhs = hn * s.value();
        row.base = k * std::pow(hn * count, 1.0 + eps);
        if (count == 0) {
            // empty level set (k >= max u): both sides vanish
            row.applicable = false;
            row.ratio = 0.0;
        } else {
            row.ratio = row.lhs / row.base;
        }
        if (!std::isfinite(row.lhs) || !std::isfinite(row.base))
            throw std::runtime_error("level_decay_diagnostic: non-finite entry");
        table.push_back(row);
    }
    return table;
}

std::vector<TruncationRow> truncation_sequence_diagnostic(const Grid& g,
                                                          GridFunction u, double p) {
    if (u.size() != g.size())
        throw std::invalid_argument("truncation_sequence_diagnostic: dimension mismatch");
    if (!(u.minCoeff() >= 0.0))
        throw std::invalid_argument("truncation_sequence_diagnostic: u must be >= 0");
    const double np = lp_norm_p(g, u, p);
    if (np > 0.0) u /= std::pow(np, 1.0 / p);  // unit-L^p smallness emulation
    std::vector<TruncationRow> table;
    double prev = kInf;
    for (int k = 1; k <= 16; ++k) {
        const double level = 1.0 - std::pow(2.0, -k);
        GridFunction wk = (u.array() - level).cwiseMax(0.0);
        TruncationRow row;
        row.k = k;
        row.U = lp_norm_p(g, wk, p);
        if (row.U > prev)
            throw std::runtime_error("truncation_sequence_diagnostic: U_k increased");
        prev = row.U;
        table.push_back(row);
    }
    return table;
}

LinftyRow linfty_bound_row(const Grid& g, const GridFunction& u, const std::string& label) {
    LinftyRow row;
    row.grid = label;
    row.sup_norm = u.lpNorm<Eigen::Infinity>();
    row.l1_norm = g.cell_measure() * u.cwiseAbs().sum();
    row.ratio = row.sup_norm / row.l1_norm;
    if (!std::isfinite(row.ratio))
        throw std::runtime_error("linfty_bound_row: non-finite ratio");
    return row;
}

}  // namespace fraceig
