#ifndef FRACEIG_KERNEL_HPP
#define FRACEIG_KERNEL_HPP

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>

namespace fraceig {

// Point in R^n, n = 1 or 2. The second coordinate is 0 for 1D problems.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Symmetric multiplier a(x,y) in front of the singular part |x-y|^{-(n+sp)}.
using Multiplier = std::function<double(const Point&, const Point&)>;

// Singular kernel K(x,y) = a(x,y) * |x-y|^{-(n+sp)} with two-sided
// ellipticity bounds lam_lo <= a <= lam_hi.
struct Kernel {
    double s = 0.5;          // fractional order, in (0,1)
    double p = 2.0;          // integrability exponent, > 1
    int dim = 1;             // spatial dimension, 1 or 2
    Multiplier multiplier;   // empty means a == 1
    double lam_lo = 1.0;
    double lam_hi = 1.0;
    std::string multiplier_name = "one";

    double exponent() const { return dim + s * p; }
    bool pure() const { return !multiplier; }
    double mult(const Point& a, const Point& b) const {
        return multiplier ? multiplier(a, b) : 1.0;
    }
};

// Pure fractional p-Laplacian kernel, a == 1.
Kernel make_fractional_kernel(double s, double p, int n);

// Kernel with a named builtin multiplier: "one" or
// "sin_bump" (a(x,y) = 1 + 0.5*sin(x1+y1), bounds [0.5, 1.5]).
Kernel make_kernel(double s, double p, int n, const std::string& multiplier_name,
                   double lam_lo, double lam_hi);

// K(x,y); throws std::domain_error at x == y (diagonal singularity).
double eval_kernel(const Kernel& k, const Point& x, const Point& y);

struct EllipticityReport {
    bool ok = true;
    double worst_ratio = 1.0;  // extremal multiplier value over the samples
};

EllipticityReport check_ellipticity(const Kernel& k,
                                    std::span<const std::pair<Point, Point>> sample_pairs);

}  // namespace fraceig

#endif
