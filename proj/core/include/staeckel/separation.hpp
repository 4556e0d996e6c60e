#pragma once

/** \file
    Curvilinear coordinate charts for the six separable families on S^3:
    forward and inverse chart maps, Staeckel matrices, separated momenta,
    and the turning-point roots of the radial polynomials.
*/

#include "staeckel/types.hpp"

#include <array>
#include <utility>

namespace staeckel {

/** A point (s1, s2, s3) in the curvilinear chart of a family. */
struct CurvilinearPoint {
    Vec3 s = Vec3::Zero();
    SystemSpec spec;
};

enum class ImageStatus { InImage, NotInImage };

/** Roots of the family's turning polynomial.  For the ellipsoidal family
    this is R(z) = 2h z^2 - eta1 z + eta2 with e1 <= r1 <= r2 <= e4 for
    values in the momentum-map image; the discriminant is clamped to zero
    within 1e-12 (parabola boundary). */
struct TurningRoots {
    ImageStatus status = ImageStatus::InImage;
    double r1 = 0;  ///< turning root on the first (or inner) branch
    double r2 = 0;  ///< turning root on the remaining branch(es)
    double disc = 0;
};

/// Closed coordinate intervals [lo, hi] of the three curvilinear
/// coordinates of a family.
std::array<std::array<double, 2>, 3> branch_intervals(const SystemSpec& spec);

/// Chart map: coordinate magnitudes |x_1..x_4| with sum of squares 1.
/// Throws std::domain_error naming the coordinate on interval violations.
Vec4 to_cartesian(const CurvilinearPoint& p);

/// Inverse chart map for a unit 4-vector (sign-insensitive).
/// Throws std::domain_error if x is off the sphere beyond 1e-10.
CurvilinearPoint from_cartesian(const Vec4& x, const SystemSpec& spec);

/// Chart derivative dx_j/ds_k (rows k = 0..2, columns j = 0..3) at a
/// signed Cartesian representative x with coordinates s.
Eigen::Matrix<double, 3, 4> chart_jacobian(const Vec4& x, const Vec3& s,
                                           const SystemSpec& spec);

/// Conjugate curvilinear momenta p_k = sum_j y_j dx_j/ds_k at a
/// cotangent point.
Vec3 curvilinear_momenta(const CotangentPoint& p, const SystemSpec& spec);

struct StackelResult {
    Mat3 Phi;
    /// Residual of the defining relation: the first row of Phi^{-1} must
    /// equal the inverse diagonal metric of the embedded chart.
    double residual = 0;
};

/** The Staeckel matrix of the family at a chart point (available for the
    ellipsoidal and Lame families); throws std::domain_error for the
    other families and for coincident coordinates. */
StackelResult stackel_matrix(const SystemSpec& spec, const CurvilinearPoint& p);

/** Squared separated momentum p_branch^2(s) at integral values (v1, v2).
    May be negative (classically forbidden s).  At poles of the family's
    denominator the result follows IEEE arithmetic (signed infinity), no
    exception is thrown. */
double separated_momentum_sq(double s, int branch, const IntegralValues& values,
                             const SystemSpec& spec);

/// Turning roots of the family's radial polynomial(s).
TurningRoots turning_roots(const IntegralValues& values, const SystemSpec& spec);

/** Reconstruct the angular momenta from ellipsoidal separated data
    (s, p), selecting the Cartesian octant with four sign bits (+1/-1).
    Only implemented for the ellipsoidal family. */
Bivector angular_momenta_from_sp(const Vec3& s, const Vec3& p, const SystemSpec& spec,
                                 const std::array<int, 4>& signs);

}  // namespace staeckel
