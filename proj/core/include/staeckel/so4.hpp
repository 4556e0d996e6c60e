#pragma once

/** \file
    The Lie-Poisson space so*(4): structure matrices (canonical, Dirac,
    compatible), brackets, Casimirs, the (X, Y) split, the trace formula,
    and the commuting integral pairs of all six separable families.
*/

#include "staeckel/types.hpp"

#include <random>
#include <utility>

namespace staeckel {

/** Structure matrix of the Dirac bracket on T*S^3 realized in R^8 with
    coordinates (x, y); the two constraints c1 = x.x - 1 and c2 = x.y are
    Casimirs of the returned matrix. */
Mat8 dirac_structure(const CotangentPoint& p);

/// Canonical Lie-Poisson structure matrix B_L of so*(4) in the component
/// order (l12, l13, l14, l23, l24, l34).
Mat6 structure_matrix(const Vec6& L);
inline Mat6 structure_matrix(const Bivector& L) { return structure_matrix(L.vec()); }

/** Structure matrix B_C of the compatible bracket {., .}_C induced by a
    diagonal matrix C.  C = identity gives -B_L, and the bundle relation
    B_{lambda I - C} = lambda B_I - B_C holds entrywise. */
Mat6 compatible_structure(const Bivector& L, const DiagonalSpectrum& C);

/// Lie-Poisson bracket {f, g}(L) = (grad f)^T B_L (grad g).
double lp_bracket(const QuadraticObservable& f, const QuadraticObservable& g,
                  const Bivector& L);

/// Casimirs (C1, C2) = (sum l_ij^2, l12 l34 - l13 l24 + l14 l23).
std::pair<double, double> casimirs(const Bivector& L);

/// Gradient of the Pluecker Casimir C2.
Vec6 casimir2_gradient(const Vec6& L);

/// Linear split of so(4) into two copies of so(3) and its inverse.
XYPair split(const Bivector& L);
Bivector join(const XYPair& p);

/** Trace formula psi(lambda) = Tr((X (lambda I - C)^{-1})^2), a rational
    function whose numerator coefficients are (-2h, eta1, -eta2) at C = E.
    Throws std::domain_error naming the pole index if lambda hits a c_i. */
double trace_rational(double lambda, const Bivector& L, const DiagonalSpectrum& C);

/** The commuting pair of reduced integrals (v1, v2) of a family, ordered
    as in IntegralValues.  For families with an S^1 symmetry the linear
    observable itself (l23, l34, or l12) is returned, not its square. */
std::pair<QuadraticObservable, QuadraticObservable> build_integrals(const SystemSpec& spec);

/// Evaluate the family integral pair at a point.
IntegralValues integral_values(const Bivector& L, const SystemSpec& spec);

/// Antisymmetric 4x4 matrix X with X_ij = l_ij for i < j.
Mat4 as_matrix(const Bivector& L);

/// Exterior product: (x wedge y)_ij = x_i y_j - x_j y_i.
Bivector wedge(const Vec4& x, const Vec4& y);

/** Lax matrix A of an observable f, satisfying
    mat(B_L grad f) = [A, mat(L)] along the reduced flow of f. */
Mat4 lax_matrix(const QuadraticObservable& f, const Bivector& L);

/** Jacobian of the reduced vector field V(L) = B_L grad f, used by the
    singularity classification. */
Mat6 flow_jacobian(const QuadraticObservable& f, const Vec6& L);

/// Uniform point of the leaf C1 = 2h, C2 = 0: L = x wedge y with x uniform
/// on S^3 and y uniform on the unit tangent sphere at x, scaled by sqrt(2h).
Bivector random_leaf_point(std::mt19937_64& rng, double two_h = 1.0);

/// Uniform unit cotangent point (|x| = |y| = 1, x.y = 0).
CotangentPoint random_cotangent_point(std::mt19937_64& rng);

}  // namespace staeckel
