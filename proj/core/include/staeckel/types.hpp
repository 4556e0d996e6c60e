#pragma once

/** \file
    Basic value types shared by all modules: points of so*(4), quadratic
    observables, cotangent points of the unit sphere, and the description
    of the six separable coordinate families on S^3.
*/

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

namespace staeckel {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

/// Component order of the six angular momenta: (12, 13, 14, 23, 24, 34),
/// given here as 0-based index pairs (i, j) with i < j.
inline constexpr std::array<std::array<int, 2>, 6> kPairIndex = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// For component k with pair (i, j), the complementary pair (m, n) such
/// that {i, j, m, n} = {0, 1, 2, 3}.  Used by the diagonal quadratic
/// integrals, whose coefficient of l_ij^2 involves only e_m and e_n.
inline constexpr std::array<std::array<int, 2>, 6> kComplementIndex = {
    {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}}};

/** A point L = (l12, l13, l14, l23, l24, l34) of so*(4): the six angular
    momenta l_ij = x_i y_j - x_j y_i of the geodesic flow on S^3.
    No normalization is imposed at the type level; membership of the
    symplectic leaf (Casimir levels) is checked by operations that need it. */
struct Bivector {
    double l12 = 0, l13 = 0, l14 = 0, l23 = 0, l24 = 0, l34 = 0;

    Vec6 vec() const {
        Vec6 v;
        v << l12, l13, l14, l23, l24, l34;
        return v;
    }
    static Bivector of(const Vec6& v) {
        return Bivector{v[0], v[1], v[2], v[3], v[4], v[5]};
    }
};

/** The image of a Bivector under the standard linear split of so(4) into
    so(3) x so(3) (self-dual and anti-self-dual parts, up to scaling). */
struct XYPair {
    Vec3 X = Vec3::Zero();
    Vec3 Y = Vec3::Zero();
};

/** An observable of so*(4) of the form  value(L) = L^T Q L + linear . L + constant
    with Q symmetric.  The gradient at L is exactly 2 Q L + linear. */
class QuadraticObservable {
  public:
    QuadraticObservable()
        : Q_(Mat6::Zero()), linear_(Vec6::Zero()), constant_(0.0) {}

    /// Purely quadratic observable; the coefficient matrix is symmetrized.
    static QuadraticObservable quadratic(const Mat6& Q) {
        QuadraticObservable f;
        f.Q_ = 0.5 * (Q + Q.transpose());
        return f;
    }
    /// Quadratic observable with a diagonal coefficient matrix.
    static QuadraticObservable diagonal(const Vec6& d) {
        QuadraticObservable f;
        f.Q_ = d.asDiagonal();
        return f;
    }
    /// Linear observable coeff * l_(pair component), component in [0, 6).
    static QuadraticObservable component(int component, double coeff = 1.0) {
        QuadraticObservable f;
        f.linear_[component] = coeff;
        return f;
    }
    static QuadraticObservable linear(const Vec6& l, double constant = 0.0) {
        QuadraticObservable f;
        f.linear_ = l;
        f.constant_ = constant;
        return f;
    }
    /// General observable from quadratic, linear and constant parts.
    static QuadraticObservable of(const Mat6& Q, const Vec6& l, double constant = 0.0) {
        QuadraticObservable f;
        f.Q_ = 0.5 * (Q + Q.transpose());
        f.linear_ = l;
        f.constant_ = constant;
        return f;
    }

    const Mat6& Q() const { return Q_; }
    const Vec6& linear_part() const { return linear_; }
    double constant_part() const { return constant_; }
    bool is_linear() const { return Q_.isZero(0.0); }

    double value(const Vec6& L) const {
        return L.dot(Q_ * L) + linear_.dot(L) + constant_;
    }
    double value(const Bivector& L) const { return value(L.vec()); }

    Vec6 gradient(const Vec6& L) const { return 2.0 * (Q_ * L) + linear_; }
    Vec6 gradient(const Bivector& L) const { return gradient(L.vec()); }

  private:
    Mat6 Q_;
    Vec6 linear_;
    double constant_;
};

/** Diagonal of the symmetric matrix C entering the compatible Poisson
    brackets; also carries the e_i / f_i chart parameters. */
struct DiagonalSpectrum {
    std::array<double, 4> c{0, 0, 0, 0};

    static DiagonalSpectrum of(double c1, double c2, double c3, double c4) {
        return DiagonalSpectrum{{c1, c2, c3, c4}};
    }
    bool strictly_ordered() const {
        return c[0] < c[1] && c[1] < c[2] && c[2] < c[3];
    }
};

/** A point of T*S^3 realized in R^8: x on the unit sphere and y tangent
    to it.  Construction enforces |x.x - 1| <= 1e-12 and |x.y| <= 1e-12. */
class CotangentPoint {
  public:
    CotangentPoint(const Vec4& x, const Vec4& y);

    const Vec4& x() const { return x_; }
    const Vec4& y() const { return y_; }

  private:
    Vec4 x_;
    Vec4 y_;
};

/// The six separable coordinate families on S^3.
enum class Family { Ellipsoidal, Prolate, Oblate, Lame, Spherical23, Cylindrical };

std::string family_name(Family family);

/** Which separable family, plus its parameters and the Casimir level
    2h = sum l_ij^2 of the symplectic leaf under consideration. */
struct SystemSpec {
    Family family = Family::Ellipsoidal;
    std::array<double, 4> e{0, 1, 2, 3};  ///< ellipsoidal, requires e1<e2<e3<e4
    double b = 2.0;                       ///< prolate, requires b>1
    double a = 2.0;                       ///< oblate, requires a>1
    std::array<double, 3> f{0, 1, 2};     ///< Lame, requires f1<f2<f3
    double two_h = 1.0;                   ///< Casimir level 2h > 0

    static SystemSpec ellipsoidal(double e1, double e2, double e3, double e4,
                                  double two_h = 1.0);
    static SystemSpec prolate(double b, double two_h = 1.0);
    static SystemSpec oblate(double a, double two_h = 1.0);
    static SystemSpec lame(double f1, double f2, double f3, double two_h = 1.0);
    static SystemSpec spherical23(double two_h = 1.0);
    static SystemSpec cylindrical(double two_h = 1.0);

    /// Throws std::domain_error naming the violated inequality.
    void validate() const;
};

/** A point (v1, v2) in the image of the momentum map of a family.
    Meaning per family: ellipsoidal (eta1, eta2); prolate (l23, G_pro);
    oblate (l34, G_obl); Lame (F_L, G_L); spherical (l34, G_23);
    cylindrical (l12, l34). */
struct IntegralValues {
    double v1 = 0;
    double v2 = 0;
};

/** Action variables.  For values in the momentum-map image the actions
    are nonnegative and satisfy J1 + J2 + J3 = sqrt(2h). */
struct ActionTriple {
    double J1 = 0, J2 = 0, J3 = 0;
    double sum() const { return J1 + J2 + J3; }
};

}  // namespace staeckel
