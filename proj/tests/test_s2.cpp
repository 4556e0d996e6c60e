#include "doctest.h"

#include <stdexcept>

#include <staeckel/s2.hpp>

#include <cmath>
#include <random>

using namespace staeckel;

TEST_CASE("so(3) structure: hat map, antisymmetry, Casimir") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const S2Bivector L{U(rng), U(rng), U(rng)};
        const Mat3 B = s2_structure(L);
        CHECK((B + B.transpose()).norm() < 1e-14);
        // |L|^2 is a Casimir: B * 2L = -L x 2L = 0.
        CHECK((B * (2.0 * L.vec())).norm() < 1e-14);
        // Hat-map convention on a probe gradient.
        const Vec3 g(U(rng), U(rng), U(rng));
        CHECK((B * g + L.vec().cross(g)).norm() < 1e-13);
    }
}

TEST_CASE("the quadratic integral and its Euler-top flow") {
    const std::array<double, 3> e{1, 2, 5};
    CHECK(s2_integral(e, S2Bivector{1, 0, 0}) == doctest::Approx(5.0));
    CHECK(s2_integral(e, S2Bivector{0, 1, 0}) == doctest::Approx(2.0));
    CHECK(s2_integral(e, S2Bivector{0, 0, 1}) == doctest::Approx(1.0));
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const S2Bivector L{U(rng), U(rng), U(rng)};
        // grad eta1 = 2 (e3 l12, e2 l13, e1 l23); its Lie-Poisson flow is
        // the Euler-top field with parameters e.
        const Vec3 grad(2.0 * e[2] * L.l12, 2.0 * e[1] * L.l13, 2.0 * e[0] * L.l23);
        const Vec3 flow = s2_structure(L) * grad;
        CHECK((flow - s2_euler_field(e, L.vec())).norm() < 1e-13);
    }
}

TEST_CASE("elliptic chart on S^2: worked values and round-trip consistency") {
    const std::array<double, 3> e{1, 2, 5};
    const Vec3 x = s2_chart(S2ChartKind::Elliptic, Vec2(1.5, 3.0), e);
    CHECK(x[0] * x[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(x[1] * x[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(x[2] * x[2] == doctest::Approx(7.0 / 12.0).epsilon(1e-13));
    CHECK(x.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(s2_chart(S2ChartKind::Elliptic, Vec2(0.5, 3.0), e),
                    std::domain_error);
}

TEST_CASE("spherical chart on S^2") {
    const Vec3 x = s2_chart(S2ChartKind::Spherical, Vec2(0.25, 0.4));
    CHECK(x[0] * x[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(x[1] * x[1] == doctest::Approx(0.75 * 0.4).epsilon(1e-13));
    CHECK(x[2] * x[2] == doctest::Approx(0.75 * 0.6).epsilon(1e-13));
    CHECK(x.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(s2_chart(S2ChartKind::Spherical, Vec2(-0.1, 0.5)),
                    std::domain_error);
}

TEST_CASE("S^2 bifurcation segments") {
    const S2Bifurcation b = s2_bifurcation({1, 2, 5});
    CHECK(b.lo == doctest::Approx(1.0));
    CHECK(b.hi == doctest::Approx(5.0));
    REQUIRE(b.critical.size() == 3);
    CHECK(b.critical[0].value == doctest::Approx(1.0));
    CHECK(b.critical[0].type == Rank1Type::Elliptic);
    CHECK(b.critical[1].value == doctest::Approx(2.0));
    CHECK(b.critical[1].type == Rank1Type::Hyperbolic);
    CHECK(b.critical[2].value == doctest::Approx(5.0));
    CHECK(b.critical[2].type == Rank1Type::Elliptic);

    const S2Bifurcation s = s2_bifurcation_spherical();
    CHECK(s.lo == doctest::Approx(0.0));
    CHECK(s.hi == doctest::Approx(1.0));
    REQUIRE(s.critical.size() == 2);
    CHECK(s.critical[0].value == doctest::Approx(0.0));
    CHECK(s.critical[0].type == Rank1Type::Degenerate);
    CHECK(s.critical[1].value == doctest::Approx(1.0));
    CHECK(s.critical[1].type == Rank1Type::Elliptic);
}
