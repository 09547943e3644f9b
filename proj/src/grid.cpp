#include "fraceig/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fraceig {

namespace {

long long cell_key(int ix, int iy) {
    return static_cast<long long>(ix) * (1LL << 32) + iy;
}

// h must tile the length into an integer cell count.
int integral_count(double length, double h, const char* what) {
    const double q = length / h;
    const double r = std::round(q);
    if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
        throw std::invalid_argument(std::string("grid: spacing does not tile ") + what);
    return static_cast<int>(r);
}

}  // namespace

int Grid::node_at(int ix, int iy) const {
    auto it = cell_to_node.find(cell_key(ix, iy));
    return it == cell_to_node.end() ? -1 : it->second;
}

Grid build_grid_1d(double a, double b, int N) {
    if (!(a < b)) throw std::invalid_argument("grid: need a < b");
    if (N < 1) throw std::invalid_argument("grid: need N >= 1");
    Grid g;
    g.dim = 1;
    g.a = a;
    g.b = b;
    g.h = (b - a) / N;
    g.nodes.reserve(N);
    for (int i = 0; i < N; ++i)
        g.nodes.push_back({a + (i + 0.5) * g.h, 0.0});
    // Every interval is symmetric about its midpoint.
    g.symmetry_map.resize(N);
    for (int i = 0; i < N; ++i) g.symmetry_map[i] = N - 1 - i;
    return g;
}

Grid build_grid_2d(const Box& box, double h, const MaskPredicate& mask,
                   const std::string& mask_name) {
    if (!(box.x1 > box.x0 && box.y1 > box.y0))
        throw std::invalid_argument("grid: box must have positive area");
    if (!(h > 0.0)) throw std::invalid_argument("grid: need h > 0");
    Grid g;
    g.dim = 2;
    g.h = h;
    g.box = box;
    g.mask_name = mask_name;
    g.nx = integral_count(box.x1 - box.x0, h, "box width");
    g.ny = integral_count(box.y1 - box.y0, h, "box height");
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.ny; ++iy) {
            Point c{box.x0 + (ix + 0.5) * h, box.y0 + (iy + 0.5) * h};
            if (!mask || mask(c)) {
                g.cell_to_node[cell_key(ix, iy)] = static_cast<int>(g.nodes.size());
                g.nodes.push_back(c);
                g.cells.emplace_back(ix, iy);
            }
        }
    }
    if (g.nodes.empty()) throw std::invalid_argument("grid: mask selects no cells");
    // Symmetry under the box's central reflection, when the mask admits it.
    std::vector<int> sigma(g.nodes.size());
    bool symmetric = true;
    for (int i = 0; i < g.size() && symmetric; ++i) {
        const auto [ix, iy] = g.cells[i];
        const int j = g.node_at(g.nx - 1 - ix, g.ny - 1 - iy);
        if (j < 0)
            symmetric = false;
        else
            sigma[i] = j;
    }
    if (symmetric) g.symmetry_map = std::move(sigma);
    return g;
}

MaskPredicate builtin_mask(const std::string& name, const Box& box) {
    if (name == "all") return {};
    if (name == "disk") {
        const double cx = 0.5 * (box.x0 + box.x1);
        const double cy = 0.5 * (box.y0 + box.y1);
        const double r = 0.5 * std::min(box.x1 - box.x0, box.y1 - box.y0);
        return [=](const Point& p) {
            const double dx = p.x - cx, dy = p.y - cy;
            return dx * dx + dy * dy <= r * r;
        };
    }
    if (name == "lshape") {
        const double cx = 0.5 * (box.x0 + box.x1);
        const double cy = 0.5 * (box.y0 + box.y1);
        return [=](const Point& p) { return !(p.x > cx && p.y > cy); };
    }
    throw std::invalid_argument("grid: unknown mask '" + name + "'");
}

GridFunction reflect(const Grid& g, const GridFunction& u) {
    if (!g.has_symmetry())
        throw std::logic_error("reflect: grid has no symmetry map");
    if (u.size() != g.size())
        throw std::invalid_argument("reflect: size mismatch");
    GridFunction v(u.size());
    for (int i = 0; i < g.size(); ++i) v[i] = u[g.symmetry_map[i]];
    return v;
}

}  // namespace fraceig
