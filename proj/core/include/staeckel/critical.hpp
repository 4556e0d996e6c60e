#pragma once

/** \file
    Critical points and critical values of the six reduced systems:
    bifurcation diagrams, explicit critical-circle parametrizations,
    eigenvalue-based singularity classification, chamber membership with
    torus multiplicity, and the Uhlenbeck integrals.
*/

#include "staeckel/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace staeckel {

/// Singularity type of a point of the reduced system, from the rank of
/// the momentum-map differential on the leaf and the eigenvalue pattern
/// of the leaf-restricted linearized flow.
enum class SingularityType {
    Regular,
    EllipticElliptic,
    EllipticHyperbolic,
    HyperbolicHyperbolic,
    FocusFocus,
    Rank1Elliptic,
    Rank1Hyperbolic,
    SphericalType,  ///< degenerate rank-drop point with all-zero spectrum
    Degenerate,
};

std::string singularity_name(SingularityType type);

enum class CurveKind { Line, Parabola, ParametricArc };

/// Rank-1 transversal type along a sub-arc of a bifurcation curve.
enum class Rank1Type { Elliptic, Hyperbolic, Degenerate };

struct CurveSegment {
    double t0 = 0, t1 = 0;
    Rank1Type type = Rank1Type::Degenerate;
};

/** One critical-value curve of the momentum-map image in the (v1, v2)
    plane.  Isolated critical values (the prolate focus-focus value) are
    represented as curves with t0 == t1. */
struct BifurcationCurve {
    CurveKind kind = CurveKind::ParametricArc;
    std::string name;
    std::string color;
    double t0 = 0, t1 = 0;
    std::function<Vec2(double)> at;
    std::vector<Vec2> vertices;          ///< distinguished values on the curve
    std::vector<CurveSegment> segments;  ///< rank-1 type segmentation
};

/// All critical-value curves of the family with vertices and rank-1
/// segmentation (the latter sampled via classify on constructed points).
std::vector<BifurcationCurve> bifurcation_set(const SystemSpec& spec);

/** One connected parametrized arc (possibly a single point, t0 == t1) of
    critical points of so*(4) over a fixed critical value. */
struct CriticalArc {
    std::string description;
    double t0 = 0, t1 = 0;
    std::function<Bivector(double)> at;
};

/** Explicit critical-point parametrizations over a critical value.
    Throws std::domain_error reporting the residual distance if the value
    is farther than 1e-9 (relative) from the bifurcation set. */
std::vector<CriticalArc> critical_points(const SystemSpec& spec,
                                         const IntegralValues& value);

/// Eigenvalue classification of a point of the reduced system.
SingularityType classify(const Bivector& L, const SystemSpec& spec);

/** Chamber membership of a value of the momentum map.  For the
    ellipsoidal family the code is the pair of root-interval indices
    (1..3) of the turning roots; the fibre multiplicity is 4 in chamber
    (2, 2) and 2 otherwise.  The other families have a connected regular
    chamber reported as code (1, 1) with multiplicity 1. */
struct ChamberResult {
    bool outside = false;
    std::array<int, 2> code{0, 0};
    int multiplicity = 0;
};

ChamberResult chamber(const IntegralValues& value, const SystemSpec& spec);

/** The four classical quadratic integrals.  Ellipsoidal:
    F_i = sum_{j != i} l_ij^2 / (e_i - e_j), summing to zero.  The
    prolate, oblate and Lame families return their limit combinations;
    the spherical and cylindrical families throw std::domain_error. */
Vec4 uhlenbeck(const Bivector& L, const SystemSpec& spec);

}  // namespace staeckel
