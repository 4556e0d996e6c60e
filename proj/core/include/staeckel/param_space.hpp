#pragma once

/** \file
    The moduli space of separable coordinate systems on S^3: affine
    normalization, the involution of the parameter triangle, the blow-up
    chart at the Lame corner, and the epsilon-degenerations connecting
    the six families.
*/

#include "staeckel/types.hpp"

#include <utility>

namespace staeckel {

/** Record of the affine reparametrization used by normalize():
    normalized parameters are (e + beta) / alpha. */
struct AffineRecord {
    double alpha = 1.0;
    double beta = 0.0;
};

/** Coordinates of the blow-up chart at a = b = 1: q = 1/b,
    r = (a-1)/(b-1).  Points representing equivalence classes satisfy
    q >= (1-r)/(2-r). */
struct BlowupChart {
    double q = 0;
    double r = 0;
};

/// Normalize strictly ordered (e1, e2, e3, e4) to (0, 1, a, b) with
/// 1 < a < b; returns the spec together with alpha = e2-e1, beta = -e1.
std::pair<SystemSpec, AffineRecord> normalize(const std::array<double, 4>& e);

/** Affine equivalence on integral values: the (eta1, eta2) of the system
    with parameters e map to those of the system with parameters
    alpha*e + beta via
        (eta1, eta2) -> (alpha eta1 + 4 beta h, alpha^2 eta2 + alpha beta eta1 + 2 beta^2 h).
    Throws std::domain_error for alpha = 0. */
IntegralValues transform_integral_values(const IntegralValues& eta, double alpha,
                                         double beta, double h);

/// The involution (a, b) -> ((b-1)/(b-a), b/(b-a)) of the parameter
/// triangle 1 < a < b; its fixed line is 1/b + a/b = 1.
std::pair<double, double> involution(double a, double b);

/// Blow-up chart; throws std::domain_error at the Lame point a = b = 1.
BlowupChart blowup(double a, double b);

/** An epsilon-degeneration edge: the perturbed source spec together with
    the linear relation predicting the target integrals from the source
    integral values.  For targets whose integral is linear (an angular
    momentum), the prediction is for its square; the *_is_squared flags
    record this. */
struct DegenerationPath {
    SystemSpec source;  ///< epsilon-perturbed source-family spec
    SystemSpec target;  ///< limiting family spec
    double epsilon = 0;
    bool v1_is_squared = false;
    bool v2_is_squared = false;

    /// Predicted target integral values from the source values (v1, v2)
    /// evaluated at the same point of so*(4), with Casimir level 2h.
    IntegralValues predict(const IntegralValues& source_values, double two_h) const;
};

/** Construct the degeneration edge from a source family toward a target
    family at perturbation epsilon > 0.  Supported edges: ellipsoidal to
    each of prolate/oblate/lame/cylindrical, lame to spherical, oblate to
    spherical.  Throws std::domain_error for unreachable targets. */
DegenerationPath degeneration_path(const SystemSpec& from, Family to, double epsilon);

}  // namespace staeckel
