#include "staeckel/grassmann.hpp"

#include "staeckel/so4.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace staeckel {

Bivector plucker(const OrientedPlane& p) {
    constexpr double tol = 1e-12;
    if (std::abs(p.x.squaredNorm() - 1.0) > tol ||
        std::abs(p.y.squaredNorm() - 1.0) > tol || std::abs(p.x.dot(p.y)) > tol)
        throw std::domain_error("plucker: basis is not orthonormal");
    return wedge(p.x, p.y);
}

Mat4 plane_matrix(const Bivector& L) {
    Mat4 M;
    M << L.l23, -L.l13, L.l12, 0.0,
         L.l24, -L.l14, 0.0, L.l12,
         L.l34, 0.0, -L.l14, L.l13,
         0.0, L.l34, -L.l24, L.l23;
    return M;
}

OrientedPlane plane_from_bivector(const Bivector& L) {
    const auto [c1, c2] = casimirs(L);
    if (!(c1 > 0.0))
        throw std::domain_error("plane_from_bivector: zero bivector");
    if (std::abs(c2) > 1e-10 * std::max(1.0, c1))
        throw std::domain_error(
            "plane_from_bivector: bivector is not decomposable (C2 != 0)");

    const Mat4 M = plane_matrix(L);
    const Eigen::JacobiSVD<Mat4> svd(M, Eigen::ComputeFullV);
    const Vec4 sigma = svd.singularValues();
    if (sigma[2] > 1e-9 * sigma[0])
        throw std::domain_error("plane_from_bivector: kernel of M_L is not 2-dimensional");

    OrientedPlane p;
    p.x = svd.matrixV().col(2);
    p.y = svd.matrixV().col(3);

    // Fix the orientation against the largest-magnitude component of L.
    const Vec6 Lv = L.vec();
    const double scale = std::sqrt(c1);
    int imax = 0;
    Lv.cwiseAbs().maxCoeff(&imax);
    const Vec6 W = wedge(p.x, p.y).vec();
    if (W[imax] * Lv[imax] < 0.0) p.y = -p.y;
    (void)scale;
    return p;
}

Bivector hodge_star(const Bivector& L) {
    return Bivector{L.l34, -L.l24, L.l23, L.l14, -L.l13, L.l12};
}

std::pair<Vec3, Vec3> hodge_split(const Bivector& L) {
    const XYPair p = split(L);
    return {p.X, p.Y};
}

}  // namespace staeckel
