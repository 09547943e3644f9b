#include "fraceig/kernel.hpp"

#include <stdexcept>

namespace fraceig {

namespace {

void validate_params(double s, double p, int n) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("kernel: s must lie in (0,1)");
    if (!(p > 1.0))
        throw std::invalid_argument("kernel: p must be > 1");
    if (n != 1 && n != 2)
        throw std::invalid_argument("kernel: dimension must be 1 or 2");
}

}  // namespace

Kernel make_fractional_kernel(double s, double p, int n) {
    validate_params(s, p, n);
    Kernel k;
    k.s = s;
    k.p = p;
    k.dim = n;
    k.lam_lo = 1.0;
    k.lam_hi = 1.0;
    k.multiplier_name = "one";
    return k;
}

Kernel make_kernel(double s, double p, int n, const std::string& multiplier_name,
                   double lam_lo, double lam_hi) {
    validate_params(s, p, n);
    if (!(lam_lo > 0.0 && lam_lo <= lam_hi))
        throw std::invalid_argument("kernel: need 0 < lam_lo <= lam_hi");
    Kernel k;
    k.s = s;
    k.p = p;
    k.dim = n;
    k.lam_lo = lam_lo;
    k.lam_hi = lam_hi;
    k.multiplier_name = multiplier_name;
    if (multiplier_name == "one") {
        // a == 1, leave multiplier empty
    } else if (multiplier_name == "sin_bump") {
        k.multiplier = [](const Point& a, const Point& b) {
            return 1.0 + 0.5 * std::sin(a.x + b.x);
        };
    } else {
        throw std::invalid_argument("kernel: unknown multiplier '" + multiplier_name + "'");
    }
    return k;
}

double eval_kernel(const Kernel& k, const Point& x, const Point& y) {
    const double r = distance(x, y);
    if (r == 0.0)
        throw std::domain_error("eval_kernel: singular evaluation at x == y");
    return k.mult(x, y) * std::pow(r, -k.exponent());
}

EllipticityReport check_ellipticity(const Kernel& k,
                                    std::span<const std::pair<Point, Point>> sample_pairs) {
    EllipticityReport rep;
    double amin = k.lam_lo, amax = k.lam_lo;
    bool first = true;
    for (const auto& [x, y] : sample_pairs) {
        if (distance(x, y) == 0.0)
            throw std::domain_error("check_ellipticity: sample pair with x == y");
        const double a = k.mult(x, y);
        const double ar = k.mult(y, x);
        if (a != ar) rep.ok = false;
        if (first) {
            amin = amax = a;
            first = false;
        } else {
            amin = std::min(amin, a);
            amax = std::max(amax, a);
        }
        if (a < k.lam_lo || a > k.lam_hi) rep.ok = false;
    }
    if (first) {
        rep.worst_ratio = 1.0;  // no samples; pure bounds hold vacuously
        return rep;
    }
    // Report whichever extremum deviates more from the declared band.
    rep.worst_ratio = (amax - k.lam_hi >= k.lam_lo - amin) ? amax : amin;
    return rep;
}

}  // namespace fraceig
