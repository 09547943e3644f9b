#ifndef FRACEIG_ASSEMBLY_HPP
#define FRACEIG_ASSEMBLY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fraceig/grid.hpp"
#include "fraceig/kernel.hpp"

namespace fraceig {

struct AssemblyOptions {
    // 1D: replace collocation weights of pairs with |i-j| <= radius by the
    // exact cell-pair integral. 0 = off (keeps the exact scaling invariant).
    int near_field_radius = 0;
    // 2D tails: subcells per axis for the midpoint quadrature near B_R \ Omega.
    int tail_refine = 4;
};

// Discrete image of the double integral: symmetric pair weights over
// unordered node pairs and per-node exterior tail weights.
struct Assembly {
    Grid grid;
    Kernel kernel;
    AssemblyOptions opts;
    std::string scheme;
    std::vector<double> pair_w;  // packed upper triangle, i < j
    std::vector<double> tails;   // t_i > 0

    int size() const { return grid.size(); }
    double cell_measure() const { return grid.cell_measure(); }

    std::size_t pair_index(int i, int j) const {
        // requires i < j
        const std::size_t n = static_cast<std::size_t>(size());
        const std::size_t ii = static_cast<std::size_t>(i);
        return ii * n - ii * (ii + 1) / 2 + static_cast<std::size_t>(j - i - 1);
    }
    double w(int i, int j) const {
        if (i == j) return 0.0;
        return i < j ? pair_w[pair_index(i, j)] : pair_w[pair_index(j, i)];
    }
};

Assembly assemble(const Grid& grid, const Kernel& kernel, const AssemblyOptions& opts = {});

// The Omega x COmega contribution: t_i = 2 h^n Integral_{COmega} K(x_i, y) dy,
// exact in 1D, analytic far field + midpoint quadrature in 2D.
std::vector<double> assemble_tails(const Grid& grid, const Kernel& kernel,
                                   const AssemblyOptions& opts = {});

// Exact integral of |x-y|^{-(1+sp)} over two 1D cells of width h whose
// centers are d apart (d >= h). Diverges for adjacent cells when sp >= 1.
double cell_pair_integral_1d(double d, double h, double sp);

}  // namespace fraceig

#endif
