#pragma once

/** \file
    Carlson symmetric elliptic integrals and the complete Legendre
    integrals K(k) and Pi(alpha, k) built on them.
*/

namespace staeckel {

/// Carlson R_F(x, y, z); requires nonnegative arguments, at most one zero.
double carlson_rf(double x, double y, double z);

/// Degenerate case R_C(x, y) = R_F(x, y, y); requires x >= 0, y > 0.
double carlson_rc(double x, double y);

/// Carlson R_J(x, y, z, p); requires nonnegative x, y, z (at most one
/// zero) and p > 0.
double carlson_rj(double x, double y, double z, double p);

/// Complete elliptic integral of the first kind, modulus convention
/// K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t); throws
/// std::domain_error for |k| >= 1.
double complete_elliptic_k(double k);

/// Complete integral of the third kind,
/// Pi(alpha, k) = int_0^{pi/2} dt / ((1 - alpha sin^2 t) sqrt(1 - k^2 sin^2 t));
/// throws std::domain_error for |k| >= 1 or alpha >= 1.
double complete_elliptic_pi(double alpha, double k);

}  // namespace staeckel
