#include "fraceig/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fraceig {

double cell_pair_integral_1d(double d, double h, double sp) {
    if (!(d >= h)) throw std::invalid_argument("cell_pair_integral_1d: cells overlap");
    if (sp == 1.0) {
        if (d == h) return std::numeric_limits<double>::infinity();
        return 2.0 * std::log(d) - std::log(d + h) - std::log(d - h);
    }
    // Second antiderivative of r^{-(1+sp)} is r^{1-sp}/(sp(sp-1)).
    const double e = 1.0 - sp;
    const double num = std::pow(d + h, e) - 2.0 * std::pow(d, e) +
                       (d > h ? std::pow(d - h, e) : (sp < 1.0 ? 0.0 : std::numeric_limits<double>::infinity()));
    return num / (sp * (sp - 1.0));
}

namespace {

// Smallest R with B_R(x) containing every interior cell (max distance to
// any cell corner).
double covering_radius(const Grid& g, const Point& x) {
    double r2 = 0.0;
    const double hh = 0.5 * g.h;
    for (const auto& c : g.nodes) {
        const double dx = std::abs(c.x - x.x) + hh;
        const double dy = std::abs(c.y - x.y) + hh;
        r2 = std::max(r2, dx * dx + dy * dy);
    }
    return std::sqrt(r2);
}

std::vector<double> tails_1d(const Grid& g, const Kernel& k) {
    const double sp = k.s * k.p;
    std::vector<double> t(g.nodes.size());
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.nodes[i].x;
        // Multiplier frozen per tail direction at unit offset.
        const double al = k.mult(g.nodes[i], Point{x - 1.0, 0.0});
        const double ar = k.mult(g.nodes[i], Point{x + 1.0, 0.0});
        const double T = (al * std::pow(x - g.a, -sp) + ar * std::pow(g.b - x, -sp)) / sp;
        t[i] = 2.0 * g.h * T;
    }
    return t;
}

std::vector<double> tails_2d(const Grid& g, const Kernel& k, const AssemblyOptions& opts) {
    const double sp = k.s * k.p;
    const int m = std::max(1, opts.tail_refine);
    const double hs = g.h / m;
    const double sub_area = hs * hs;
    std::vector<double> t(g.nodes.size());
    for (int i = 0; i < g.size(); ++i) {
        const Point& x = g.nodes[i];
        const double R = covering_radius(g, x);
        const double a_frozen = k.mult(x, x);
        double T = a_frozen * 2.0 * M_PI * std::pow(R, -sp) / sp;
        // Midpoint quadrature over the lattice cells of B_R(x) \ Omega.
        const int ix_lo = static_cast<int>(std::floor((x.x - R - g.box.x0) / g.h)) - 1;
        const int ix_hi = static_cast<int>(std::ceil((x.x + R - g.box.x0) / g.h)) + 1;
        const int iy_lo = static_cast<int>(std::floor((x.y - R - g.box.y0) / g.h)) - 1;
        const int iy_hi = static_cast<int>(std::ceil((x.y + R - g.box.y0) / g.h)) + 1;
        double near = 0.0;
        for (int ix = ix_lo; ix <= ix_hi; ++ix) {
            for (int iy = iy_lo; iy <= iy_hi; ++iy) {
                if (ix >= 0 && ix < g.nx && iy >= 0 && iy < g.ny && g.node_at(ix, iy) >= 0)
                    continue;  // interior cell
                const double cx0 = g.box.x0 + ix * g.h;
                const double cy0 = g.box.y0 + iy * g.h;
                for (int sx = 0; sx < m; ++sx) {
                    for (int sy = 0; sy < m; ++sy) {
                        const Point y{cx0 + (sx + 0.5) * hs, cy0 + (sy + 0.5) * hs};
                        const double dx = y.x - x.x, dy = y.y - x.y;
                        if (dx * dx + dy * dy > R * R) continue;
                        near += eval_kernel(k, x, y) * sub_area;
                    }
                }
            }
        }
        T += near;
        if (!std::isfinite(T) || !(T > 0.0))
            throw std::overflow_error("assemble_tails: non-finite tail weight");
        t[i] = 2.0 * g.h * g.h * T;
    }
    return t;
}

}  // namespace

std::vector<double> assemble_tails(const Grid& grid, const Kernel& kernel,
                                   const AssemblyOptions& opts) {
    if (kernel.dim != grid.dim)
        throw std::invalid_argument("assemble_tails: kernel/grid dimension mismatch");
    auto t = grid.dim == 1 ? tails_1d(grid, kernel) : tails_2d(grid, kernel, opts);
    for (double ti : t)
        if (!std::isfinite(ti) || !(ti > 0.0))
            throw std::overflow_error("assemble_tails: non-finite tail weight");
    return t;
}

Assembly assemble(const Grid& grid, const Kernel& kernel, const AssemblyOptions& opts) {
    if (kernel.dim != grid.dim)
        throw std::invalid_argument("assemble: kernel/grid dimension mismatch");
    Assembly A;
    A.grid = grid;
    A.kernel = kernel;
    A.opts = opts;
    const int N = grid.size();
    const double cellp = grid.cell_measure() * grid.cell_measure();  // h^{2n}
    A.pair_w.resize(static_cast<std::size_t>(N) * (N - 1) / 2);
    const double sp = kernel.s * kernel.p;
    std::size_t idx = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j, ++idx) {
            double w;
            if (grid.dim == 1 && opts.near_field_radius > 0 && j - i <= opts.near_field_radius) {
                const double d = std::abs(grid.nodes[j].x - grid.nodes[i].x);
                w = kernel.mult(grid.nodes[i], grid.nodes[j]) *
                    cell_pair_integral_1d(d, grid.h, sp);
            } else {
                w = cellp * eval_kernel(kernel, grid.nodes[i], grid.nodes[j]);
            }
            if (!std::isfinite(w))
                throw std::overflow_error("assemble: non-finite pair weight");
            A.pair_w[idx] = w;
        }
    }
    A.tails = assemble_tails(grid, kernel, opts);
    A.scheme = "collocation";
    if (grid.dim == 1 && opts.near_field_radius > 0)
        A.scheme += "+near_field_r" + std::to_string(opts.near_field_radius);
    return A;
}

}  // namespace fraceig
