#pragma once

#include <cmath>
#include <numbers>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"

namespace laxgrid {

// Unit-model angle profile on rho = r/R: a rotation by 8*pi*rho near the
// centre, a flat half-turn band, and a ramp back to zero at rho = 1/2.
inline double twist_profile(double rho) {
    constexpr double pi = std::numbers::pi;
    if (rho <= 0.125) return 8.0 * pi * rho;
    if (rho <= 0.375) return pi;
    if (rho < 0.5) return 4.0 * pi - 8.0 * pi * rho;
    return 0.0;
}

// Radius-preserving angular shear of the plane about `cx,cy`, supported in
// the closed disk of radius R/2. sign = -1 gives the inverse.
struct TwistMap {
    double cx = 0.0;
    double cy = 0.0;
    double R = 1.0;
    int sign = 1;

    TwistMap() = default;
    TwistMap(double cx_, double cy_, double R_, int sign_ = 1) : cx(cx_), cy(cy_), R(R_), sign(sign_) {
        require(R_ > 0.0 && std::isfinite(R_), ErrorKind::DomainError, "twist radius must be positive");
        require(sign_ == 1 || sign_ == -1, ErrorKind::DomainError, "twist sign must be +1 or -1");
    }

    TwistMap inverse() const { return TwistMap(cx, cy, R, -sign); }

    // Radius of the support disk.
    double support_radius() const { return R / 2.0; }

    Point operator()(const Point& p) const {
        double dx = p[0] - cx;
        double dy = p[1] - cy;
        double r = std::hypot(dx, dy);
        double rho = r / R;
        if (!(rho < 0.5)) return p;
        double a = sign * twist_profile(rho);
        double c = std::cos(a);
        double s = std::sin(a);
        Point out(2);
        out[0] = cx + c * dx - s * dy;
        out[1] = cy + s * dx + c * dy;
        return out;
    }
};

inline Point twist_eval(const TwistMap& t, const Point& p) {
    require(p.n == 2, ErrorKind::DomainError, "twist maps act on the plane");
    return t(p);
}

} // namespace laxgrid
