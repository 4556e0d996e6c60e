#pragma once

/** \file
    Adaptive Gauss-Legendre quadrature and the trigonometric substitution
    used for action integrals with inverse-square-root endpoint behavior.
*/

#include <functional>

namespace staeckel {

/** Adaptive quadrature of f over [a, b] to absolute tolerance tol:
    15-point Gauss-Legendre panels, bisected until the two-half estimate
    agrees with the whole-panel estimate.  Throws std::domain_error if
    the recursion exceeds depth 48. */
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

/** Action-type integral int_a^b sqrt(max(0, q(s))) ds where q has (at
    most) simple zeros at the endpoints: substitutes s = m + w sin(theta)
    with m = (a+b)/2, w = (b-a)/2, which removes the endpoint sqrt
    singularities of the integrand's derivative. */
double integrate_turning(const std::function<double(double)>& q, double a, double b,
                         double tol = 1e-10);

}  // namespace staeckel
