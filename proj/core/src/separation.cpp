#include "staeckel/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr double kIntervalTol = 1e-9;
constexpr double kSquareTol = 1e-12;
constexpr double kSphereTol = 1e-10;
constexpr double kDiscClamp = 1e-12;

/// sqrt of a chart square that may be a tiny negative through rounding.
double safe_sqrt(double sq, const char* what) {
    if (sq < -kSquareTol) {
        std::ostringstream os;
        os << "to_cartesian: negative square for " << what << " (" << sq << ")";
        throw std::domain_error(os.str());
    }
    return std::sqrt(std::max(sq, 0.0));
}

void check_interval(double s, double lo, double hi, int k) {
    const double tol = kIntervalTol * (1.0 + std::abs(lo) + std::abs(hi));
    if (s < lo - tol || s > hi + tol) {
        std::ostringstream os;
        os << "to_cartesian: s" << (k + 1) << " = " << s << " outside ["
           << lo << ", " << hi << "]";
        throw std::domain_error(os.str());
    }
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

/// x_j / (2 d); a zero numerator dominates (the entry vanishes).
double jratio(double x, double d) { return x == 0.0 ? 0.0 : x / (2.0 * d); }

/// Confocal cubic T(s) = sum_j x_j^2 prod_{k != j} (s - e_k) in product form.
double confocal_cubic(double s, const Vec4& xsq, const std::array<double, 4>& e) {
    double t = 0;
    for (int j = 0; j < 4; ++j) {
        double p = xsq[j];
        for (int k = 0; k < 4; ++k)
            if (k != j) p *= s - e[k];
        t += p;
    }
    return t;
}

double confocal_cubic_deriv(double s, const Vec4& xsq, const std::array<double, 4>& e) {
    double t = 0;
    for (int j = 0; j < 4; ++j) {
        for (int m = 0; m < 4; ++m) {
            if (m == j) continue;
            double p = xsq[j];
            for (int k = 0; k < 4; ++k)
                if (k != j && k != m) p *= s - e[k];
            t += p;
        }
    }
    return t;
}

/// All-real roots of the monic cubic s^3 + p s^2 + q s + r (sorted).
std::array<double, 3> monic_cubic_roots(double p, double q, double r) {
    const double Q = (p * p - 3.0 * q) / 9.0;
    const double R = (2.0 * p * p * p - 9.0 * p * q + 27.0 * r) / 54.0;
    std::array<double, 3> roots;
    if (Q <= 0.0) {
        // Nearly triple root.
        roots.fill(-p / 3.0);
        return roots;
    }
    const double arg = clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0);
    const double theta = std::acos(arg);
    const double m = -2.0 * std::sqrt(Q);
    for (int k = 0; k < 3; ++k)
        roots[k] = m * std::cos((theta + 2.0 * M_PI * k) / 3.0) - p / 3.0;
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Two real roots of a s^2 + b s + c (sorted); assumes disc >= 0 up to rounding.
std::array<double, 2> quadratic_roots(double a, double b, double c) {
    const double disc = std::max(b * b - 4.0 * a * c, 0.0);
    const double sq = std::sqrt(disc);
    // Stable splitting: compute the large-magnitude root first.
    const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    double r1, r2;
    if (q != 0.0 && a != 0.0) {
        r1 = q / a;
        r2 = c / q;
    } else if (a != 0.0) {
        r1 = r2 = -b / (2.0 * a);
    } else {
        r1 = r2 = (b != 0.0 ? -c / b : 0.0);
    }
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

/** a s^2 + b s + c evaluated through its roots, a (s - r1)(s - r2), when
    they are real.  The coefficient form loses all accuracy next to a root,
    which ruins quadrature of the separated momenta near turning points. */
double quadratic_value(double a, double b, double c, double s) {
    if (a != 0.0 && b * b - 4.0 * a * c >= 0.0) {
        const auto r = quadratic_roots(a, b, c);
        return a * (s - r[0]) * (s - r[1]);
    }
    return (a * s + b) * s + c;
}

Vec4 chart_squares(const CurvilinearPoint& p) {
    const SystemSpec& sp = p.spec;
    const double s1 = p.s[0], s2 = p.s[1], s3 = p.s[2];
    Vec4 sq;
    switch (sp.family) {
        case Family::Ellipsoidal: {
            const auto& e = sp.e;
            for (int j = 0; j < 4; ++j) {
                double num = 1.0, den = 1.0;
                for (int i = 0; i < 3; ++i) num *= p.s[i] - e[j];
                for (int k = 0; k < 4; ++k)
                    if (k != j) den *= e[k] - e[j];
                sq[j] = num / den;
            }
            break;
        }
        case Family::Prolate: {
            const double b = sp.b;
            sq[0] = s1 * s3 / b;
            sq[1] = -(s1 - 1.0) * s2 * (s3 - 1.0) / (b - 1.0);
            sq[2] = (s1 - 1.0) * (s2 - 1.0) * (s3 - 1.0) / (b - 1.0);
            sq[3] = (b - s1) * (b - s3) / ((b - 1.0) * b);
            break;
        }
        case Family::Oblate: {
            const double a = sp.a;
            sq[0] = s1 * s2 / a;
            sq[1] = -(s1 - 1.0) * (s2 - 1.0) / (a - 1.0);
            sq[2] = (s1 - a) * (s2 - a) * s3 / (a * (a - 1.0));
            sq[3] = (s1 - a) * (s2 - a) * (1.0 - s3) / (a * (a - 1.0));
            break;
        }
        case Family::Lame: {
            const double f1 = sp.f[0], f2 = sp.f[1], f3 = sp.f[2];
            sq[0] = s1;
            sq[1] = -(s1 - 1.0) * (s2 - f1) * (s3 - f1) / ((f2 - f1) * (f3 - f1));
            sq[2] = (s1 - 1.0) * (f2 - s2) * (f2 - s3) / ((f1 - f2) * (f2 - f3));
            sq[3] = (s1 - 1.0) * (f3 - s2) * (f3 - s3) / ((f2 - f3) * (f3 - f1));
            break;
        }
        case Family::Spherical23:
            sq[0] = s1;
            sq[1] = (1.0 - s1) * s2;
            sq[2] = (1.0 - s1) * (1.0 - s2) * s3;
            sq[3] = (1.0 - s1) * (1.0 - s2) * (1.0 - s3);
            break;
        case Family::Cylindrical:
            sq[0] = s1 * s2;
            sq[1] = s2 * (1.0 - s1);
            sq[2] = s3 * (1.0 - s2);
            sq[3] = (1.0 - s2) * (1.0 - s3);
            break;
    }
    return sq;
}

}  // namespace

std::array<std::array<double, 2>, 3> branch_intervals(const SystemSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::Ellipsoidal:
            return {{{spec.e[0], spec.e[1]}, {spec.e[1], spec.e[2]}, {spec.e[2], spec.e[3]}}};
        case Family::Prolate:
            return {{{0.0, 1.0}, {0.0, 1.0}, {1.0, spec.b}}};
        case Family::Oblate:
            return {{{0.0, 1.0}, {1.0, spec.a}, {0.0, 1.0}}};
        case Family::Lame:
            return {{{0.0, 1.0}, {spec.f[0], spec.f[1]}, {spec.f[1], spec.f[2]}}};
        case Family::Spherical23:
        case Family::Cylindrical:
            return {{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
    }
    throw std::domain_error("branch_intervals: unknown family");
}

Vec4 to_cartesian(const CurvilinearPoint& p) {
    const auto iv = branch_intervals(p.spec);
    for (int k = 0; k < 3; ++k) check_interval(p.s[k], iv[k][0], iv[k][1], k);
    const Vec4 sq = chart_squares(p);
    Vec4 x;
    static const char* names[4] = {"x1", "x2", "x3", "x4"};
    for (int j = 0; j < 4; ++j) x[j] = safe_sqrt(sq[j], names[j]);
    return x;
}

CurvilinearPoint from_cartesian(const Vec4& x, const SystemSpec& spec) {
    spec.validate();
    if (std::abs(x.squaredNorm() - 1.0) > kSphereTol)
        throw std::domain_error("from_cartesian: |x|^2 - 1 exceeds 1e-10");
    Vec4 xsq = x.cwiseProduct(x);
    xsq /= xsq.sum();  // kill the O(1e-10) sphere defect exactly
    CurvilinearPoint out;
    out.spec = spec;
    const auto iv = branch_intervals(spec);
    Vec3 s = Vec3::Zero();

    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            // Monic cubic coefficients of T(s) = sum_j x_j^2 prod_{k!=j}(s - e_k).
            double c2 = 0, c1 = 0, c0 = 0;
            for (int j = 0; j < 4; ++j) {
                double a[3];
                int n = 0;
                for (int k = 0; k < 4; ++k)
                    if (k != j) a[n++] = e[k];
                c2 -= xsq[j] * (a[0] + a[1] + a[2]);
                c1 += xsq[j] * (a[0] * a[1] + a[0] * a[2] + a[1] * a[2]);
                c0 -= xsq[j] * a[0] * a[1] * a[2];
            }
            auto roots = monic_cubic_roots(c2, c1, c0);
            // Newton polish in product form, clamped to the branch interval.
            for (int k = 0; k < 3; ++k) {
                double r = clamp(roots[k], iv[k][0], iv[k][1]);
                for (int it = 0; it < 4; ++it) {
                    const double f = confocal_cubic(r, xsq, e);
                    const double df = confocal_cubic_deriv(r, xsq, e);
                    if (df == 0.0) break;
                    r = clamp(r - f / df, iv[k][0], iv[k][1]);
                }
                s[k] = r;
            }
            break;
        }
        case Family::Prolate: {
            const double b = spec.b;
            const double d = xsq[1] + xsq[2];
            s[1] = d > 0 ? xsq[1] / d : 0.0;
            const auto r = quadratic_roots(
                1.0, -(b + xsq[0] - (b - 1.0) * xsq[3]), b * xsq[0]);
            s[0] = r[0];
            s[2] = r[1];
            break;
        }
        case Family::Oblate: {
            const double a = spec.a;
            const double d = xsq[2] + xsq[3];
            s[2] = d > 0 ? xsq[2] / d : 0.0;
            const auto r = quadratic_roots(
                1.0, -(a + xsq[0] - (a - 1.0) * (xsq[2] + xsq[3])), a * xsq[0]);
            s[0] = r[0];
            s[1] = r[1];
            break;
        }
        case Family::Lame: {
            const double f1 = spec.f[0], f2 = spec.f[1], f3 = spec.f[2];
            s[0] = xsq[0];
            const double rem = 1.0 - s[0];
            if (rem <= 0.0) {
                s[1] = f1;
                s[2] = f2;
                break;
            }
            const double w1 = xsq[1] / rem, w2 = xsq[2] / rem, w3 = xsq[3] / rem;
            const double bq = -(w1 * (f2 + f3) + w2 * (f1 + f3) + w3 * (f1 + f2));
            const double cq = w1 * f2 * f3 + w2 * f1 * f3 + w3 * f1 * f2;
            const auto r = quadratic_roots(w1 + w2 + w3, bq, cq);
            s[1] = r[0];
            s[2] = r[1];
            break;
        }
        case Family::Spherical23: {
            s[0] = xsq[0];
            const double r1 = 1.0 - s[0];
            s[1] = r1 > 0 ? xsq[1] / r1 : 0.0;
            const double r2 = r1 * (1.0 - s[1]);
            s[2] = r2 > 0 ? xsq[2] / r2 : 0.0;
            break;
        }
        case Family::Cylindrical: {
            s[1] = xsq[0] + xsq[1];
            s[0] = s[1] > 0 ? xsq[0] / s[1] : 0.0;
            const double rem = 1.0 - s[1];
            s[2] = rem > 0 ? xsq[2] / rem : 0.0;
            break;
        }
    }
    for (int k = 0; k < 3; ++k) out.s[k] = clamp(s[k], iv[k][0], iv[k][1]);
    return out;
}

Eigen::Matrix<double, 3, 4> chart_jacobian(const Vec4& x, const Vec3& s,
                                           const SystemSpec& spec) {
    spec.validate();
    Eigen::Matrix<double, 3, 4> J = Eigen::Matrix<double, 3, 4>::Zero();
    const double s1 = s[0], s2 = s[1], s3 = s[2];
    switch (spec.family) {
        case Family::Ellipsoidal:
            for (int k = 0; k < 3; ++k)
                for (int j = 0; j < 4; ++j)
                    J(k, j) = jratio(x[j], s[k] - spec.e[j]);
            break;
        case Family::Prolate: {
            const double b = spec.b;
            J.row(0) << jratio(x[0], s1), jratio(x[1], s1 - 1.0),
                jratio(x[2], s1 - 1.0), jratio(x[3], s1 - b);
            J.row(1) << 0.0, jratio(x[1], s2), jratio(x[2], s2 - 1.0), 0.0;
            J.row(2) << jratio(x[0], s3), jratio(x[1], s3 - 1.0),
                jratio(x[2], s3 - 1.0), jratio(x[3], s3 - b);
            break;
        }
        case Family::Oblate: {
            const double a = spec.a;
            J.row(0) << jratio(x[0], s1), jratio(x[1], s1 - 1.0),
                jratio(x[2], s1 - a), jratio(x[3], s1 - a);
            J.row(1) << jratio(x[0], s2), jratio(x[1], s2 - 1.0),
                jratio(x[2], s2 - a), jratio(x[3], s2 - a);
            J.row(2) << 0.0, 0.0, jratio(x[2], s3), jratio(x[3], s3 - 1.0);
            break;
        }
        case Family::Lame: {
            const double f1 = spec.f[0], f2 = spec.f[1], f3 = spec.f[2];
            J.row(0) << jratio(x[0], s1), jratio(x[1], s1 - 1.0),
                jratio(x[2], s1 - 1.0), jratio(x[3], s1 - 1.0);
            for (int k = 1; k < 3; ++k)
                J.row(k) << 0.0, jratio(x[1], s[k] - f1), jratio(x[2], s[k] - f2),
                    jratio(x[3], s[k] - f3);
            break;
        }
        case Family::Spherical23:
            J.row(0) << jratio(x[0], s1), jratio(x[1], s1 - 1.0),
                jratio(x[2], s1 - 1.0), jratio(x[3], s1 - 1.0);
            J.row(1) << 0.0, jratio(x[1], s2), jratio(x[2], s2 - 1.0),
                jratio(x[3], s2 - 1.0);
            J.row(2) << 0.0, 0.0, jratio(x[2], s3), jratio(x[3], s3 - 1.0);
            break;
        case Family::Cylindrical:
            J.row(0) << jratio(x[0], s1), jratio(x[1], s1 - 1.0), 0.0, 0.0;
            J.row(1) << jratio(x[0], s2), jratio(x[1], s2), jratio(x[2], s2 - 1.0),
                jratio(x[3], s2 - 1.0);
            J.row(2) << 0.0, 0.0, jratio(x[2], s3), jratio(x[3], s3 - 1.0);
            break;
    }
    return J;
}

Vec3 curvilinear_momenta(const CotangentPoint& p, const SystemSpec& spec) {
    const CurvilinearPoint cp = from_cartesian(p.x(), spec);
    const Eigen::Matrix<double, 3, 4> J = chart_jacobian(p.x(), cp.s, spec);
    return J * p.y();
}

StackelResult stackel_matrix(const SystemSpec& spec, const CurvilinearPoint& p) {
    spec.validate();
    const double s1 = p.s[0], s2 = p.s[1], s3 = p.s[2];
    Mat3 Phi = Mat3::Zero();
    switch (spec.family) {
        case Family::Ellipsoidal: {
            for (int i = 0; i < 3; ++i) {
                double A = 1.0;
                for (int k = 0; k < 4; ++k) A *= p.s[i] - spec.e[k];
                if (A == 0.0)
                    throw std::domain_error(
                        "stackel_matrix: coordinate coincides with a chart parameter");
                const double si = p.s[i];
                Phi(i, 0) = -0.25 * si * si / A;
                Phi(i, 1) = -0.25 * si / A;
                Phi(i, 2) = -0.25 / A;
            }
            break;
        }
        case Family::Lame: {
            const double f1 = spec.f[0], f2 = spec.f[1], f3 = spec.f[2];
            const double d1 = (s1 - 1.0) * s1;
            const double d2a = (f3 - s2) * (s2 - f2);
            const double d2b = (f3 - s2) * (s2 - f1) * (s2 - f2);
            const double d3a = (f3 - s3) * (s3 - f2);
            const double d3b = (f3 - s3) * (s3 - f1) * (s3 - f2);
            if (d1 == 0.0 || d2b == 0.0 || d3b == 0.0)
                throw std::domain_error(
                    "stackel_matrix: coordinate coincides with a chart parameter");
            Phi(0, 0) = -0.25 / d1;
            Phi(0, 1) = -0.25 / ((s1 - 1.0) * d1);
            Phi(1, 1) = 0.25 / d2a;
            Phi(1, 2) = 0.25 / d2b;
            Phi(2, 1) = 0.25 / d3a;
            Phi(2, 2) = 0.25 / d3b;
            break;
        }
        default:
            throw std::domain_error(
                "stackel_matrix: available only for the ellipsoidal and lame families");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p.s[i] == p.s[j])
                throw std::domain_error("stackel_matrix: coincident coordinates");

    StackelResult out;
    out.Phi = Phi;
    const Mat3 inv = Phi.inverse();
    const Vec4 x = to_cartesian(p);
    const Eigen::Matrix<double, 3, 4> J = chart_jacobian(x, p.s, spec);
    for (int i = 0; i < 3; ++i) {
        const double gii = J.row(i).squaredNorm();
        out.residual = std::max(out.residual, std::abs(inv(0, i) * gii - 1.0));
    }
    return out;
}

double separated_momentum_sq(double s, int branch, const IntegralValues& values,
                             const SystemSpec& spec) {
    spec.validate();
    if (branch < 0 || branch > 2)
        throw std::invalid_argument("separated_momentum_sq: branch must be 0, 1 or 2");
    const double H2 = spec.two_h;
    const double v1 = values.v1, v2 = values.v2;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const double R = quadratic_value(H2, -v1, v2, s);
            double A = 1.0;
            for (int k = 0; k < 4; ++k) A *= s - spec.e[k];
            return -R / (4.0 * A);
        }
        case Family::Prolate: {
            const double l = v1, g = v2, b = spec.b;
            if (branch == 1) return l * l / (4.0 * s * (1.0 - s));
            const double num =
                quadratic_value(-H2, g + H2 + (b - 1.0) * l * l, -g, s);
            return num / (4.0 * s * (s - b) * (s - 1.0) * (s - 1.0));
        }
        case Family::Oblate: {
            const double l = v1, g = v2, a = spec.a;
            if (branch == 2) return l * l / (4.0 * s * (1.0 - s));
            const double num =
                quadratic_value(-H2, a * H2 + g - (a - 1.0) * l * l, -a * g, s);
            return num / (4.0 * s * (s - 1.0) * (s - a) * (s - a));
        }
        case Family::Lame: {
            const double F = v1, G = v2;
            if (branch == 0) return (F - H2 * s) / (4.0 * (s - 1.0) * (s - 1.0) * s);
            const double f1 = spec.f[0], f2 = spec.f[1], f3 = spec.f[2];
            return -((F - H2) * s + G) / (4.0 * (f3 - s) * (s - f1) * (s - f2));
        }
        case Family::Spherical23: {
            const double l = v1, g = v2;
            if (branch == 0) return (g - H2 * s) / (4.0 * s * (s - 1.0) * (s - 1.0));
            if (branch == 1)
                return ((g - H2) * (s - 1.0) - l * l) / (4.0 * s * (s - 1.0) * (s - 1.0));
            return l * l / (4.0 * s * (1.0 - s));
        }
        case Family::Cylindrical: {
            const double l12 = v1, l34 = v2;
            if (branch == 0) return l12 * l12 / (4.0 * s * (1.0 - s));
            if (branch == 2) return l34 * l34 / (4.0 * s * (1.0 - s));
            const double num = quadratic_value(
                -H2, H2 + l12 * l12 - l34 * l34, -l12 * l12, s);
            return num / (4.0 * (s - 1.0) * (s - 1.0) * s * s);
        }
    }
    throw std::domain_error("separated_momentum_sq: unknown family");
}

TurningRoots turning_roots(const IntegralValues& values, const SystemSpec& spec) {
    spec.validate();
    const double H2 = spec.two_h;
    const double v1 = values.v1, v2 = values.v2;
    TurningRoots out;

    // Quadratic turning polynomial 2h s^2 + B s + C (ellipsoidal, prolate,
    // oblate, cylindrical); the Lame and spherical families factor linearly.
    auto solve_quadratic = [&](double B, double C) {
        double disc = B * B - 4.0 * H2 * C;
        const double scale = std::max({1.0, B * B, std::abs(4.0 * H2 * C)});
        if (std::abs(disc) < kDiscClamp * scale) disc = 0.0;
        out.disc = disc;
        if (disc < 0.0) {
            out.status = ImageStatus::NotInImage;
            out.r1 = out.r2 = -B / (2.0 * H2);
            return;
        }
        const auto r = quadratic_roots(H2, B, C);
        out.r1 = r[0];
        out.r2 = r[1];
    };

    switch (spec.family) {
        case Family::Ellipsoidal: {
            solve_quadratic(-v1, v2);
            if (out.status == ImageStatus::InImage) {
                const double tol = kIntervalTol * (1.0 + std::abs(spec.e[0]) + std::abs(spec.e[3]));
                if (out.r1 < spec.e[0] - tol || out.r2 > spec.e[3] + tol)
                    out.status = ImageStatus::NotInImage;
            }
            return out;
        }
        case Family::Prolate: {
            const double l = v1, g = v2, b = spec.b;
            solve_quadratic(-(g + H2 + (b - 1.0) * l * l), g);
            if (g < -kDiscClamp || g > b * (H2 - l * l) + kDiscClamp)
                out.status = ImageStatus::NotInImage;
            return out;
        }
        case Family::Oblate: {
            const double l = v1, g = v2, a = spec.a;
            solve_quadratic(-(a * H2 + g - (a - 1.0) * l * l), a * g);
            // Besides real roots (g below the outer boundary branch), the
            // middle coordinate needs an oscillation interval inside [1, a]:
            // either r1 <= 1 <= r2 (g <= 2h - l^2) or both roots above 1.
            if (g < -kDiscClamp ||
                (g > H2 - l * l + kDiscClamp && out.r1 < 1.0 - kDiscClamp))
                out.status = ImageStatus::NotInImage;
            return out;
        }
        case Family::Lame: {
            const double F = v1, G = v2;
            out.r1 = F / H2;
            out.r2 = (H2 - F) != 0.0 ? G / (H2 - F)
                                     : std::numeric_limits<double>::infinity();
            if (F < -kDiscClamp || F > H2 + kDiscClamp ||
                G < spec.f[0] * (H2 - F) - kDiscClamp ||
                G > spec.f[2] * (H2 - F) + kDiscClamp)
                out.status = ImageStatus::NotInImage;
            return out;
        }
        case Family::Spherical23: {
            const double l = v1, g = v2;
            out.r1 = g / H2;
            out.r2 = (H2 - g) != 0.0 ? 1.0 - l * l / (H2 - g)
                                     : std::numeric_limits<double>::infinity();
            if (g < -kDiscClamp || g > H2 - l * l + kDiscClamp)
                out.status = ImageStatus::NotInImage;
            return out;
        }
        case Family::Cylindrical: {
            const double l12 = v1, l34 = v2;
            solve_quadratic(-(H2 + l12 * l12 - l34 * l34), l12 * l12);
            if (std::abs(l12) + std::abs(l34) > std::sqrt(H2) + kDiscClamp)
                out.status = ImageStatus::NotInImage;
            return out;
        }
    }
    throw std::domain_error("turning_roots: unknown family");
}

Bivector angular_momenta_from_sp(const Vec3& s, const Vec3& p, const SystemSpec& spec,
                                 const std::array<int, 4>& signs) {
    if (spec.family != Family::Ellipsoidal)
        throw std::domain_error(
            "angular_momenta_from_sp: available only for the ellipsoidal family");
    CurvilinearPoint cp;
    cp.s = s;
    cp.spec = spec;
    Vec4 x = to_cartesian(cp);
    for (int j = 0; j < 4; ++j) x[j] *= (signs[j] >= 0 ? 1.0 : -1.0);

    // sdot_k = -4 A(s_k) / D(s_k) p_k with D the Vandermonde-type product.
    Vec3 sdot;
    for (int k = 0; k < 3; ++k) {
        double A = 1.0;
        for (int i = 0; i < 4; ++i) A *= s[k] - spec.e[i];
        double D = 1.0;
        for (int l = 0; l < 3; ++l)
            if (l != k) D *= s[k] - s[l];
        if (D == 0.0)
            throw std::domain_error("angular_momenta_from_sp: coincident coordinates");
        sdot[k] = -4.0 * A / D * p[k];
    }
    const Eigen::Matrix<double, 3, 4> J = chart_jacobian(x, s, spec);
    const Vec4 xdot = J.transpose() * sdot;

    Vec6 v;
    for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kPairIndex[k];
        v[k] = x[i] * xdot[j] - x[j] * xdot[i];
    }
    return Bivector::of(v);
}

}  // namespace staeckel
