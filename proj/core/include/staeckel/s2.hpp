#pragma once

/** \file
    The two-degree-of-freedom analogue on S^2: angular momenta with the
    so(3) bracket, the quadratic integral of the elliptic coordinates,
    the two charts, the Euler-top vector field, and the one-dimensional
    momentum-map segment with its critical points.
*/

#include "staeckel/critical.hpp"
#include "staeckel/types.hpp"

#include <array>
#include <vector>

namespace staeckel {

/// Angular momenta (l12, l13, l23) of the geodesic flow on S^2.
struct S2Bivector {
    double l12 = 0, l13 = 0, l23 = 0;

    Vec3 vec() const { return Vec3(l12, l13, l23); }
    static S2Bivector of(const Vec3& v) { return S2Bivector{v[0], v[1], v[2]}; }
};

/** so(3) structure matrix at L in the component order (l12, l13, l23):
    the hat map, with B grad g = -L x grad g.  The flow of s2_integral
    under this bracket is the Euler-top field with parameters e. */
Mat3 s2_structure(const S2Bivector& L);

/// The commuting integral eta1 = e3 l12^2 + e2 l13^2 + e1 l23^2.
double s2_integral(const std::array<double, 3>& e, const S2Bivector& L);

enum class S2ChartKind { Elliptic, Spherical };

/** Coordinates |x_i| of the point of S^2 with chart values s = (s1, s2).
    Elliptic: x_i^2 = (s1 - e_i)(s2 - e_i) / prod_{k != i} (e_k - e_i)
    with e1 <= s1 <= e2 <= s2 <= e3.  Spherical: x1^2 = s1,
    x2^2 = (1 - s1) s2, x3^2 = (1 - s1)(1 - s2) with s in [0, 1]^2.
    Throws std::domain_error on interval violation. */
Vec3 s2_chart(S2ChartKind kind, const Vec2& s, const std::array<double, 3>& e = {});

/// Euler-top field (2(f2-f1) u2 u3, 2(f1-f3) u1 u3, 2(f3-f2) u1 u2).
Vec3 s2_euler_field(const std::array<double, 3>& f, const Vec3& u);

/** The momentum-map image of the S^2 system is a segment; its critical
    values are isolated points with a rank-1 transversal type. */
struct S2Bifurcation {
    double lo = 0, hi = 0;
    struct CriticalValue {
        double value = 0;
        Rank1Type type = Rank1Type::Degenerate;
    };
    std::vector<CriticalValue> critical;
};

/// Elliptic family on S^2: segment [e1, e3] (2h = 1), elliptic endpoints
/// and a hyperbolic point at e2.
S2Bifurcation s2_bifurcation(const std::array<double, 3>& e);

/// Degenerate spherical variant: segment [0, 1] with a degenerate value
/// at 0 and an elliptic value at 1.
S2Bifurcation s2_bifurcation_spherical();

}  // namespace staeckel
