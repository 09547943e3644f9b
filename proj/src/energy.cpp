#include "fraceig/energy.hpp"

#include <stdexcept>

namespace fraceig {

namespace {

void check_size(const Assembly& A, const GridFunction& u, const char* where) {
    if (u.size() != A.size())
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace

EnergyValue energy(const Assembly& A, const GridFunction& u) {
    check_size(A, u, "energy");
    const double p = A.kernel.p;
    const int N = A.size();
    KahanSum interior, tail;
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j, ++idx)
            interior.add(A.pair_w[idx] * pow_abs(u[i] - u[j], p));
    for (int i = 0; i < N; ++i) tail.add(A.tails[i] * pow_abs(u[i], p));
    EnergyValue e;
    e.k_interior = 2.0 * interior.value();
    e.k_tail = tail.value();
    e.total = e.k_interior + e.k_tail;
    return e;
}

double form(const Assembly& A, const GridFunction& u, const GridFunction& v) {
    check_size(A, u, "form");
    check_size(A, v, "form");
    const double p = A.kernel.p;
    const int N = A.size();
    KahanSum s;
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j, ++idx)
            s.add(2.0 * A.pair_w[idx] * phi_p(u[i] - u[j], p) * (v[i] - v[j]));
    for (int i = 0; i < N; ++i) s.add(A.tails[i] * phi_p(u[i], p) * v[i]);
    return s.value();
}

GridFunction apply_operator(const Assembly& A, const GridFunction& u) {
    check_size(A, u, "apply_operator");
    const double p = A.kernel.p;
    const int N = A.size();
    const double hn = A.cell_measure();
    GridFunction g = GridFunction::Zero(N);
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j, ++idx) {
            const double f = A.pair_w[idx] * phi_p(u[j] - u[i], p);
            g[i] += 2.0 * f;
            g[j] -= 2.0 * f;
        }
    }
    for (int i = 0; i < N; ++i) g[i] = (g[i] - A.tails[i] * phi_p(u[i], p)) / hn;
    return g;
}

double lp_norm_p(const Grid& g, const GridFunction& u, double p) {
    if (u.size() != g.size())
        throw std::invalid_argument("lp_norm_p: dimension mismatch");
    KahanSum s;
    for (int i = 0; i < g.size(); ++i) s.add(pow_abs(u[i], p));
    return g.cell_measure() * s.value();
}

double rayleigh(const Assembly& A, const GridFunction& u) {
    const double np = lp_norm_p(A.grid, u, A.kernel.p);
    if (np == 0.0)
        throw std::domain_error("rayleigh: zero function");
    return energy(A, u).total / np;
}

GridFunction rayleigh_gradient(const Assembly& A, const GridFunction& u) {
    check_size(A, u, "rayleigh_gradient");
    const double p = A.kernel.p;
    const int N = A.size();
    const double hn = A.cell_measure();
    const double np = lp_norm_p(A.grid, u, p);
    if (np == 0.0)
        throw std::domain_error("rayleigh_gradient: zero function");
    const double R = energy(A, u).total / np;
    GridFunction g = GridFunction::Zero(N);
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j, ++idx) {
            const double f = A.pair_w[idx] * phi_p(u[i] - u[j], p);
            g[i] += 2.0 * f;
            g[j] -= 2.0 * f;
        }
    }
    const double scale = p / np;
    for (int i = 0; i < N; ++i) {
        const double ph = phi_p(u[i], p);
        g[i] = scale * (g[i] + A.tails[i] * ph - R * hn * ph);
    }
    return g;
}

}  // namespace fraceig
