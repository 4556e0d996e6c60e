#include "doctest.h"

#include <stdexcept>

#include <staeckel/grassmann.hpp>
#include <staeckel/so4.hpp>

#include <random>

using namespace staeckel;

namespace {
std::mt19937_64 rng(17);
}

TEST_CASE("Plucker embedding lands on the decomposable quadric") {
    for (int trial = 0; trial < 50; ++trial) {
        const CotangentPoint p = random_cotangent_point(rng);
        const Bivector L = plucker(OrientedPlane{p.x(), p.y()});
        const auto [c1, c2] = casimirs(L);
        CHECK(c1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(c2) < 1e-13);
        // The plane matrix annihilates the plane and has rank 2: all
        // 3x3 minors vanish.
        const Mat4 M = plane_matrix(L);
        CHECK((M * p.x()).norm() < 1e-12);
        CHECK((M * p.y()).norm() < 1e-12);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                Mat3 sub;
                int ri = 0;
                for (int rr = 0; rr < 4; ++rr) {
                    if (rr == r) continue;
                    int ci = 0;
                    for (int cc = 0; cc < 4; ++cc) {
                        if (cc == c) continue;
                        sub(ri, ci) = M(rr, cc);
                        ++ci;
                    }
                    ++ri;
                }
                CHECK(std::abs(sub.determinant()) < 1e-12);
            }
    }
}

TEST_CASE("round-trip plane -> bivector -> plane preserves span and orientation") {
    for (int trial = 0; trial < 50; ++trial) {
        const CotangentPoint p = random_cotangent_point(rng);
        const OrientedPlane pl{p.x(), p.y()};
        const Bivector L = plucker(pl);
        const OrientedPlane back = plane_from_bivector(L);
        // Same span: the projectors coincide.
        Eigen::Matrix<double, 4, 2> A, B;
        A.col(0) = pl.x;
        A.col(1) = pl.y;
        B.col(0) = back.x;
        B.col(1) = back.y;
        const Mat4 PA = A * A.transpose();
        const Mat4 PB = B * B.transpose();
        CHECK((PA - PB).norm() < 1e-10);
        // Same orientation: the wedge reproduces +L.
        CHECK((wedge(back.x, back.y).vec() - L.vec()).norm() < 1e-10);
    }
}

TEST_CASE("plucker and plane_from_bivector reject bad input") {
    CHECK_THROWS_AS(plucker(OrientedPlane{Vec4(1, 0, 0, 0), Vec4(1, 0, 0, 0)}),
                    std::domain_error);
    CHECK_THROWS_AS(plucker(OrientedPlane{Vec4(2, 0, 0, 0), Vec4(0, 1, 0, 0)}),
                    std::domain_error);
    // Non-decomposable bivector: C2 != 0.
    CHECK_THROWS_AS(plane_from_bivector(Bivector{1, 0, 0, 0, 0, 1}),
                    std::domain_error);
    CHECK_THROWS_AS(plane_from_bivector(Bivector{}), std::domain_error);
}

TEST_CASE("Hodge star is an involution exchanging the Casimirs' roles") {
    for (int trial = 0; trial < 20; ++trial) {
        const Bivector L = random_leaf_point(rng, 3.0);
        const Bivector S = hodge_star(L);
        CHECK((hodge_star(S).vec() - L.vec()).norm() < 1e-14);
        const auto [c1, c2] = casimirs(L);
        const auto [s1, s2] = casimirs(S);
        CHECK(s1 == doctest::Approx(c1).epsilon(1e-13));
        CHECK(s2 == doctest::Approx(c2).epsilon(1e-10).scale(1.0));
        // Self-dual part is fixed, anti-self-dual part flips sign.
        const auto [X, Y] = hodge_split(L);
        const auto [SX, SY] = hodge_split(S);
        CHECK((SX - X).norm() < 1e-14);
        CHECK((SY + Y).norm() < 1e-14);
    }
}

TEST_CASE("hodge_split agrees with the so(4) split") {
    const Bivector L = random_leaf_point(rng);
    const auto [X, Y] = hodge_split(L);
    const XYPair p = split(L);
    CHECK((X - p.X).norm() < 1e-14);
    CHECK((Y - p.Y).norm() < 1e-14);
}
