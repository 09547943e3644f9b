#ifndef FRACEIG_SOLVER_HPP
#define FRACEIG_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fraceig/energy.hpp"

namespace fraceig {

struct SolveOptions {
    double tol = 1e-10;       // stopping tolerance on the gradient sup-norm
    long max_iters = 50000;
    double step0 = 1.0;
    double backtrack = 0.5;   // in (0,1)
    double armijo = 1e-4;     // in (0,1)
    bool enforce_sign = true; // replace the iterate by |u| after each step
    std::uint64_t seed = 0;
    enum class Mode { First, Odd } mode = Mode::First;
};

struct EigenResult {
    double lambda = 0.0;
    GridFunction u;
    long iterations = 0;
    double grad_norm = 0.0;
    double residual = 0.0;           // pointwise eigen-equation defect / lambda
    bool converged = false;
    std::vector<double> history;     // nonincreasing Rayleigh values
};

// Projected gradient descent on the normalized Rayleigh quotient with
// Armijo backtracking; non-convergence is reported in the result.
EigenResult minimize_rayleigh(const Assembly& A, const SolveOptions& opts,
                              const GridFunction* init = nullptr);

// Same iteration restricted to odd functions of a symmetric grid; returns a
// sign-changing critical point.
EigenResult solve_odd(const Assembly& A, SolveOptions opts);

struct OracleResult {
    double lambda_min = 0.0;
    GridFunction vector;
    std::optional<double> lambda_min_odd;
    Eigen::VectorXd eigenvalues;  // full spectrum, ascending
};

// Dense symmetric eigendecomposition of the p=2 stiffness matrix
// M_ii = (2 sum_j w_ij + t_i)/h^n, M_ij = -2 w_ij/h^n.
OracleResult dense_oracle_p2(const Assembly& A);

// Weak-formulation defect of an eigen-pair over 64 random unit test
// functions, relative to lambda.
double residual(const Assembly& A, const EigenResult& res);

// Unit discrete L^p norm and positive largest-magnitude component.
void normalize_eigenfunction(const Grid& g, GridFunction& u, double p);

}  // namespace fraceig

#endif
