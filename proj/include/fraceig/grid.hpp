#ifndef FRACEIG_GRID_HPP
#define FRACEIG_GRID_HPP

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "fraceig/kernel.hpp"

namespace fraceig {

// Values on the interior nodes; the function is extended by zero outside.
using GridFunction = Eigen::VectorXd;

struct Box {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};

// Uniform cell-centered lattice over a bounded domain. The complement of the
// domain is represented implicitly (zero extension of grid functions).
struct Grid {
    int dim = 1;
    double h = 0.0;
    std::vector<Point> nodes;

    // 1D descriptor
    double a = 0.0, b = 0.0;

    // 2D descriptor
    Box box;
    std::string mask_name;
    int nx = 0, ny = 0;                       // lattice extents of the box
    std::vector<std::pair<int, int>> cells;   // lattice index per node
    std::unordered_map<long long, int> cell_to_node;

    // Involution on node indices realizing the central reflection of a
    // symmetric domain; empty when the domain is not symmetric.
    std::vector<int> symmetry_map;

    int size() const { return static_cast<int>(nodes.size()); }
    bool has_symmetry() const { return !symmetry_map.empty(); }
    double cell_measure() const { return dim == 1 ? h : h * h; }

    // 2D: node index occupying lattice cell (ix,iy), or -1.
    int node_at(int ix, int iy) const;
};

using MaskPredicate = std::function<bool(const Point&)>;

Grid build_grid_1d(double a, double b, int N);
Grid build_grid_2d(const Box& box, double h, const MaskPredicate& mask,
                   const std::string& mask_name = "custom");

// Named builtin masks: "all", "disk" (inscribed disk), "lshape"
// (lower-left three quadrants of the box).
MaskPredicate builtin_mask(const std::string& name, const Box& box);

// v_i = u_{sigma(i)}; throws when the grid has no symmetry map.
GridFunction reflect(const Grid& g, const GridFunction& u);

}  // namespace fraceig

#endif
