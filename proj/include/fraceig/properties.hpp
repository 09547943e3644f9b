#ifndef FRACEIG_PROPERTIES_HPP
#define FRACEIG_PROPERTIES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fraceig/solver.hpp"

namespace fraceig {

struct PropertyReport {
    std::string name;
    long trials = 0;
    long violations = 0;
    double worst_slack = 0.0;  // most negative margin observed
    bool passed = true;        // violations == 0
    std::vector<std::string> details;
};

// Energy convexity along sigma_t = ((1-t) v^p + t u^p)^{1/p} for strictly
// positive u, v (samples uniform in [0.1, 1.1] per node).
PropertyReport check_hidden_convexity(const Assembly& A, int trials,
                                      std::span<const double> t_values,
                                      std::uint64_t seed);

// Scalar inequality phi_p(a-b) (a_+ - b_+) >= |a_+ - b_+|^p.
PropertyReport check_truncation_inequality(int samples, double p, std::uint64_t seed);

// energy(|u|) <= energy(u), strict when some coupled pair changes sign.
PropertyReport check_abs_decrease(const Assembly& A, int trials, std::uint64_t seed);

// Sup-distance of two normalized eigenfunctions; details carry the
// pointwise-ratio variance.
PropertyReport check_proportionality(const Grid& g, const GridFunction& u1,
                                     const GridFunction& u2, double p, double tol);

// rayleigh(phi) >= lambda (up to relative slack 1e-10) for random probes.
PropertyReport check_first_mode_minimality(const Assembly& A, const EigenResult& res,
                                           int probes, std::uint64_t seed);

struct LevelDecayRow {
    double k = 0.0;
    double lhs = 0.0;       // h^n sum_i (u_i - k)_+
    double base = 0.0;      // k (h^n #{u_i > k})^{1+eps}, eps = sp/(n(p-1))
    double ratio = 0.0;     // empirical constant, lhs/base
    bool applicable = true; // false when the level set is empty
};
std::vector<LevelDecayRow> level_decay_diagnostic(const Assembly& A, const GridFunction& u,
                                                  std::span<const double> k_values);

struct TruncationRow {
    int k = 0;
    double U = 0.0;  // lp_norm_p of (u - (1 - 2^{-k}))_+
};
// Unit-L^p-normalized truncation sequence U_k, k = 1..16; throws when the
// sequence fails to be nonincreasing.
std::vector<TruncationRow> truncation_sequence_diagnostic(const Grid& g,
                                                          GridFunction u, double p);

struct LinftyRow {
    std::string grid;
    double sup_norm = 0.0;
    double l1_norm = 0.0;
    double ratio = 0.0;
};
LinftyRow linfty_bound_row(const Grid& g, const GridFunction& u, const std::string& label);

}  // namespace fraceig

#endif
