#include "staeckel/s2.hpp"

#include <cmath>
#include <stdexcept>

namespace staeckel {

namespace {

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

Mat3 s2_structure(const S2Bivector& L) {
    // B v = -L x v in the (l12, l13, l23) order.
    Mat3 B;
    B << 0.0, L.l23, -L.l13,
         -L.l23, 0.0, L.l12,
         L.l13, -L.l12, 0.0;
    return B;
}

double s2_integral(const std::array<double, 3>& e, const S2Bivector& L) {
    return e[2] * L.l12 * L.l12 + e[1] * L.l13 * L.l13 + e[0] * L.l23 * L.l23;
}

Vec3 s2_chart(S2ChartKind kind, const Vec2& s, const std::array<double, 3>& e) {
    if (kind == S2ChartKind::Spherical) {
        if (s[0] < 0.0 || s[0] > 1.0 || s[1] < 0.0 || s[1] > 1.0)
            throw std::domain_error("s2_chart: spherical coordinates must lie in [0, 1]");
        return Vec3(safe_sqrt(s[0]), safe_sqrt((1.0 - s[0]) * s[1]),
                    safe_sqrt((1.0 - s[0]) * (1.0 - s[1])));
    }
    if (!(e[0] < e[1] && e[1] < e[2]))
        throw std::domain_error("s2_chart: elliptic parameters must satisfy e1 < e2 < e3");
    const double tol = 1e-12 * (1.0 + std::abs(e[0]) + std::abs(e[2]));
    if (s[0] < e[0] - tol || s[0] > e[1] + tol || s[1] < e[1] - tol ||
        s[1] > e[2] + tol)
        throw std::domain_error(
            "s2_chart: elliptic coordinates must satisfy e1 <= s1 <= e2 <= s2 <= e3");
    Vec3 x;
    for (int i = 0; i < 3; ++i) {
        double denom = 1.0;
        for (int k = 0; k < 3; ++k)
            if (k != i) denom *= e[k] - e[i];
        x[i] = safe_sqrt((s[0] - e[i]) * (s[1] - e[i]) / denom);
    }
    return x;
}

Vec3 s2_euler_field(const std::array<double, 3>& f, const Vec3& u) {
    return Vec3(2.0 * (f[1] - f[0]) * u[1] * u[2],
                2.0 * (f[0] - f[2]) * u[0] * u[2],
                2.0 * (f[2] - f[1]) * u[0] * u[1]);
}

S2Bifurcation s2_bifurcation(const std::array<double, 3>& e) {
    if (!(e[0] < e[1] && e[1] < e[2]))
        throw std::domain_error(
            "s2_bifurcation: parameters must satisfy e1 < e2 < e3");
    S2Bifurcation out;
    out.lo = e[0];
    out.hi = e[2];
    out.critical = {{e[0], Rank1Type::Elliptic},
                    {e[1], Rank1Type::Hyperbolic},
                    {e[2], Rank1Type::Elliptic}};
    return out;
}

S2Bifurcation s2_bifurcation_spherical() {
    S2Bifurcation out;
    out.lo = 0.0;
    out.hi = 1.0;
    out.critical = {{0.0, Rank1Type::Degenerate}, {1.0, Rank1Type::Elliptic}};
    return out;
}

}  // namespace staeckel
