#include "staeckel/so4.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace staeckel {

namespace {

/// Columns of the 6x6 identity, used when differentiating B_L in L.
Vec6 unit6(int k) {
    Vec6 v = Vec6::Zero();
    v[k] = 1.0;
    return v;
}

}  // namespace

Mat8 dirac_structure(const CotangentPoint& p) {
    const Vec4& x = p.x();
    const Vec4& y = p.y();
    if (x.squaredNorm() == 0.0)
        throw std::domain_error("dirac_structure: zero x vector");
    const Mat4 P = Mat4::Identity() - x * x.transpose();
    Mat8 B = Mat8::Zero();
    B.block<4, 4>(0, 4) = P;
    B.block<4, 4>(4, 0) = -P;
    B.block<4, 4>(4, 4) = y * x.transpose() - x * y.transpose();
    return B;
}

Mat6 structure_matrix(const Vec6& L) {
    const double l12 = L[0], l13 = L[1], l14 = L[2];
    const double l23 = L[3], l24 = L[4], l34 = L[5];
    Mat6 B;
    B <<    0,  l23,  l24, -l13, -l14,    0,
         -l23,    0,  l34,  l12,    0, -l14,
         -l24, -l34,    0,    0,  l12,  l13,
          l13, -l12,    0,    0,  l34, -l24,
          l14,    0, -l12, -l34,    0,  l23,
            0,  l14, -l13,  l24, -l23,    0;
    return B;
}

Mat6 compatible_structure(const Bivector& L, const DiagonalSpectrum& C) {
    const double l12 = L.l12, l13 = L.l13, l14 = L.l14;
    const double l23 = L.l23, l24 = L.l24, l34 = L.l34;
    const double c1 = C.c[0], c2 = C.c[1], c3 = C.c[2], c4 = C.c[3];
    Mat6 B;
    B <<        0, -c1 * l23, -c1 * l24,  c2 * l13,  c2 * l14,         0,
         c1 * l23,         0, -c1 * l34, -c3 * l12,         0,  c3 * l14,
         c1 * l24,  c1 * l34,         0,         0, -c4 * l12, -c4 * l13,
        -c2 * l13,  c3 * l12,         0,         0, -c2 * l34,  c3 * l24,
        -c2 * l14,         0,  c4 * l12,  c2 * l34,         0, -c4 * l23,
                0, -c3 * l14,  c4 * l13, -c3 * l24,  c4 * l23,         0;
    return B;
}

double lp_bracket(const QuadraticObservable& f, const QuadraticObservable& g,
                  const Bivector& L) {
    const Vec6 v = L.vec();
    return f.gradient(v).dot(structure_matrix(v) * g.gradient(v));
}

std::pair<double, double> casimirs(const Bivector& L) {
    const double c1 = L.vec().squaredNorm();
    const double c2 = L.l12 * L.l34 - L.l13 * L.l24 + L.l14 * L.l23;
    return {c1, c2};
}

Vec6 casimir2_gradient(const Vec6& L) {
    Vec6 g;
    g << L[5], -L[4], L[3], L[2], -L[1], L[0];
    return g;
}

XYPair split(const Bivector& L) {
    XYPair p;
    p.X << 0.5 * (L.l12 + L.l34), 0.5 * (L.l13 - L.l24), 0.5 * (L.l14 + L.l23);
    p.Y << 0.5 * (L.l12 - L.l34), -0.5 * (L.l13 + L.l24), 0.5 * (L.l14 - L.l23);
    return p;
}

Bivector join(const XYPair& p) {
    Bivector L;
    L.l12 = p.X[0] + p.Y[0];
    L.l13 = p.X[1] - p.Y[1];
    L.l14 = p.X[2] + p.Y[2];
    L.l23 = p.X[2] - p.Y[2];
    L.l24 = -(p.X[1] + p.Y[1]);
    L.l34 = p.X[0] - p.Y[0];
    return L;
}

double trace_rational(double lambda, const Bivector& L, const DiagonalSpectrum& C) {
    for (int i = 0; i < 4; ++i) {
        const double scale = std::max({1.0, std::abs(lambda), std::abs(C.c[i])});
        if (std::abs(lambda - C.c[i]) <= 4e-16 * scale) {
            std::ostringstream os;
            os << "trace_rational: lambda coincides with pole c" << (i + 1)
               << " (index " << i << ")";
            throw std::domain_error(os.str());
        }
    }
    const Mat4 X = as_matrix(L);
    Vec4 dinv;
    for (int i = 0; i < 4; ++i) dinv[i] = 1.0 / (lambda - C.c[i]);
    const Mat4 M = X * dinv.asDiagonal();
    return (M * M).trace();
}

std::pair<QuadraticObservable, QuadraticObservable> build_integrals(const SystemSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::Ellipsoidal: {
            Vec6 q1, q2;
            for (int k = 0; k < 6; ++k) {
                const auto [m, n] = kComplementIndex[k];
                q1[k] = spec.e[m] + spec.e[n];
                q2[k] = spec.e[m] * spec.e[n];
            }
            return {QuadraticObservable::diagonal(q1), QuadraticObservable::diagonal(q2)};
        }
        case Family::Prolate: {
            Vec6 q = Vec6::Zero();
            q[0] = spec.b;
            q[1] = spec.b;
            q[2] = 1.0;
            return {QuadraticObservable::component(3), QuadraticObservable::diagonal(q)};
        }
        case Family::Oblate: {
            Vec6 q = Vec6::Zero();
            q[0] = spec.a;
            q[1] = 1.0;
            q[2] = 1.0;
            return {QuadraticObservable::component(5), QuadraticObservable::diagonal(q)};
        }
        case Family::Lame: {
            Vec6 qF = Vec6::Zero(), qG = Vec6::Zero();
            qF[0] = qF[1] = qF[2] = 1.0;
            qG[3] = spec.f[2];
            qG[4] = spec.f[1];
            qG[5] = spec.f[0];
            return {QuadraticObservable::diagonal(qF), QuadraticObservable::diagonal(qG)};
        }
        case Family::Spherical23: {
            Vec6 q = Vec6::Zero();
            q[0] = q[1] = q[2] = 1.0;
            return {QuadraticObservable::component(5), QuadraticObservable::diagonal(q)};
        }
        case Family::Cylindrical:
            return {QuadraticObservable::component(0), QuadraticObservable::component(5)};
    }
    throw std::domain_error("build_integrals: unknown family");
}

IntegralValues integral_values(const Bivector& L, const SystemSpec& spec) {
    const auto [f, g] = build_integrals(spec);
    return IntegralValues{f.value(L), g.value(L)};
}

Mat4 as_matrix(const Bivector& L) {
    const Vec6 v = L.vec();
    Mat4 X = Mat4::Zero();
    for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kPairIndex[k];
        X(i, j) = v[k];
        X(j, i) = -v[k];
    }
    return X;
}

Bivector wedge(const Vec4& x, const Vec4& y) {
    Vec6 v;
    for (int k = 0; k < 6; ++k) {
        const auto [i, j] = kPairIndex[k];
        v[k] = x[i] * y[j] - x[j] * y[i];
    }
    return Bivector::of(v);
}

Mat4 lax_matrix(const QuadraticObservable& f, const Bivector& L) {
    return -as_matrix(Bivector::of(f.gradient(L)));
}

Mat6 flow_jacobian(const QuadraticObservable& f, const Vec6& L) {
    const Mat6 BL = structure_matrix(L);
    const Vec6 g = f.gradient(L);
    Mat6 J = BL * (2.0 * f.Q());
    for (int k = 0; k < 6; ++k)
        J.col(k) += structure_matrix(unit6(k)) * g;
    return J;
}

Bivector random_leaf_point(std::mt19937_64& rng, double two_h) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec4 x, y;
    do {
        for (int i = 0; i < 4; ++i) x[i] = gauss(rng);
    } while (x.norm() < 1e-8);
    x.normalize();
    do {
        for (int i = 0; i < 4; ++i) y[i] = gauss(rng);
        y -= x.dot(y) * x;
    } while (y.norm() < 1e-8);
    y.normalize();
    const double scale = std::sqrt(two_h);
    return Bivector::of(scale * wedge(x, y).vec());
}

CotangentPoint random_cotangent_point(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec4 x, y;
    do {
        for (int i = 0; i < 4; ++i) x[i] = gauss(rng);
    } while (x.norm() < 1e-8);
    x.normalize();
    do {
        for (int i = 0; i < 4; ++i) y[i] = gauss(rng);
        y -= x.dot(y) * x;
    } while (y.norm() < 1e-8);
    y.normalize();
    return CotangentPoint(x, y);
}

}  // namespace staeckel
