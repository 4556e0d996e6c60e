#pragma once

/** \file
    Action integrals of the six reduced systems: singularity-aware
    quadrature, closed-form vertex values of the ellipsoidal action map,
    monodromy by period-lattice transport, the semi-toric polygon and
    height invariant of the prolate system, and the distinguished
    interior arcs of the action triangle.
*/

#include "staeckel/types.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace staeckel {

/** Actions (J1, J2, J3) of a value in the momentum-map image, each
    (2/pi) int p ds over its oscillation interval; S^1-symmetric families
    have the absolute value of the linear integral as the trivial action.
    Throws std::domain_error for values outside the image.  Oscillation
    intervals shorter than 1e-12 contribute exactly 0 (the actions are
    continuous up to the boundary). */
ActionTriple action_triple(const IntegralValues& values, const SystemSpec& spec,
                           double tol = 1e-10);

/** Closed-form values of the distinguished vertices of the ellipsoidal
    action map: the tangential intersections A21, A22 (complete elliptic
    integrals), the transverse intersections A31, A12 (inverse sines),
    and the hyperbolic-hyperbolic limit point HH.  Each triple sums to
    sqrt(2h). */
struct EllipsoidalVertices {
    ActionTriple A21, A22, A31, A12, HH;
};

EllipsoidalVertices closed_form_vertices(const SystemSpec& spec);

/// Counterclockwise circular loop in the value plane, parametrized over [0, 1].
std::function<Vec2(double)> circle_loop(const Vec2& center, double radius);

/** Monodromy of the action lattice of the prolate system along a loop in
    the (l23, G) plane.  The gradient of J1 (central differences) is
    transported by nearest-lattice-point continuation against the exact
    second period (1, 0) = grad |l23|; the returned integer matrix acts on
    (J1, J2, J3).  residual is the closure defect before rounding. */
struct MonodromyResult {
    Eigen::Matrix3i matrix = Eigen::Matrix3i::Identity();
    double residual = 0.0;
};

MonodromyResult monodromy(const SystemSpec& spec,
                          const std::function<Vec2(double)>& loop,
                          int steps = 48);

/** Jump of the one-sided derivatives (dJ1/dl, dJ3/dl) across l23 = 0 at
    level G = g: (1, 0) below the focus-focus level 2h, (0, 1) above. */
std::array<int, 2> derivative_jump(const SystemSpec& spec, double g);

/** One representative of the prolate polygon invariant: the (l23, J1)
    projection of the action map with both signs of l23, carrying the
    fake corner and the focus-focus image whose J1 is the complement of
    the height invariant (2/pi) acos sqrt(1/b). */
struct SemitoricPolygon {
    std::vector<Vec2> vertices;
    Vec2 fake_corner = Vec2::Zero();
    Vec2 focus_focus = Vec2::Zero();
    double height = 0.0;
};

SemitoricPolygon semitoric_polygon(const SystemSpec& spec);

/** A parametrized arc in action space (image of a distinguished value
    curve under action_triple). */
struct ActionArc {
    std::string name;
    double t0 = 0, t1 = 0;
    std::function<ActionTriple(double)> at;
    ActionTriple start, end;  ///< closed-form endpoint values
};

/** The distinguished interior arcs of the action triangle: the images
    gamma1, gamma2 of the two tangent lines of the ellipsoidal parabola,
    the oblate arc gamma_obl along the middle curve, and the Lame middle
    line.  Families without such arcs return an empty list. */
std::vector<ActionArc> interior_arcs(const SystemSpec& spec);

}  // namespace staeckel
