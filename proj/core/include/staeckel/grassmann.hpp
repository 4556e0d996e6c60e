#pragma once

/** \file
    Grassmannian machinery for so*(4): the Plucker embedding of oriented
    planes in R^4, its inverse via the kernel of the plane matrix M_L,
    and the Hodge self-dual / anti-self-dual split.
*/

#include "staeckel/types.hpp"

#include <utility>

namespace staeckel {

/// An oriented 2-plane in R^4 given by an orthonormal basis (x, y).
struct OrientedPlane {
    Vec4 x = Vec4::Zero();
    Vec4 y = Vec4::Zero();
};

/** Plucker embedding L = x wedge y.  Requires |x| = |y| = 1 and x.y = 0
    to 1e-12; throws std::domain_error for a degenerate basis.  The image
    satisfies casimirs(L) = (1, 0). */
Bivector plucker(const OrientedPlane& p);

/** The 4x4 matrix M_L whose kernel is the plane of a decomposable L;
    rank(M_L) = 2 exactly when the Plucker relation C2(L) = 0 holds. */
Mat4 plane_matrix(const Bivector& L);

/** Inverse of the Plucker embedding: extracts the 2-dimensional kernel
    of M_L by singular value decomposition (rank cut 1e-9 relative),
    orthonormalizes, and orients the basis so that its wedge reproduces
    +L (not -L).  Requires |C2(L)| <= 1e-10 and C1(L) > 0; throws
    std::domain_error otherwise. */
OrientedPlane plane_from_bivector(const Bivector& L);

/// Hodge star in the component order (l12, l13, l14, l23, l24, l34).
Bivector hodge_star(const Bivector& L);

/// Self-dual and anti-self-dual parts (the (X, Y) split of so(4)).
std::pair<Vec3, Vec3> hodge_split(const Bivector& L);

}  // namespace staeckel
