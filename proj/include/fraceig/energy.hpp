#ifndef FRACEIG_ENERGY_HPP
#define FRACEIG_ENERGY_HPP

#include <cmath>

#include "fraceig/assembly.hpp"

namespace fraceig {

// |t|^p with fast paths for the common exponents.
inline double pow_abs(double t, double p) {
    const double a = std::abs(t);
    if (p == 2.0) return a * a;
    if (p == 3.0) return a * a * a;
    return std::pow(a, p);
}

// phi_p(t) = |t|^{p-2} t, continuously extended by phi_p(0) = 0.
inline double phi_p(double t, double p) {
    if (t == 0.0) return 0.0;
    if (p == 2.0) return t;
    if (p == 3.0) return std::abs(t) * t;
    return std::pow(std::abs(t), p - 2.0) * t;
}

// Kahan compensated accumulator; fixed summation order keeps reductions
// deterministic.
struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct EnergyValue {
    double k_interior = 0.0;
    double k_tail = 0.0;
    double total = 0.0;
};

// Discrete nonlocal energy: 2 sum_{i<j} w_ij |u_i-u_j|^p + sum_i t_i |u_i|^p.
EnergyValue energy(const Assembly& A, const GridFunction& u);

// Discrete form E(u,v); form(A,u,u) == energy(A,u).total.
double form(const Assembly& A, const GridFunction& u, const GridFunction& v);

// Discrete operator Lu with the weak identity -h^n <Lu, eta> = form(u, eta).
GridFunction apply_operator(const Assembly& A, const GridFunction& u);

// h^n sum_i |u_i|^p (p-th power of the discrete L^p norm).
double lp_norm_p(const Grid& g, const GridFunction& u, double p);

// energy / lp_norm_p; throws std::domain_error at u == 0.
double rayleigh(const Assembly& A, const GridFunction& u);

// Exact gradient of the Rayleigh quotient.
GridFunction rayleigh_gradient(const Assembly& A, const GridFunction& u);

}  // namespace fraceig

#endif
