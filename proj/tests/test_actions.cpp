#include "doctest.h"

#include <stdexcept>

#include <staeckel/actions.hpp>
#include <staeckel/critical.hpp>

#include <cmath>

using namespace staeckel;

namespace {

const SystemSpec kEll = SystemSpec::ellipsoidal(1, 2, 5, 8);

void check_triple(const ActionTriple& got, const ActionTriple& want, double tol) {
    CHECK(got.J1 == doctest::Approx(want.J1).epsilon(tol).scale(1.0));
    CHECK(got.J2 == doctest::Approx(want.J2).epsilon(tol).scale(1.0));
    CHECK(got.J3 == doctest::Approx(want.J3).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("actions are nonnegative and sum to sqrt(2h)") {
    struct Case {
        SystemSpec spec;
        IntegralValues val;
    };
    const Case cases[] = {
        {kEll, {6.5, 10.0}},  // chamber (2,2): roots 2.5 and 4
        {kEll, {7.5, 9.0}},   // chamber (1,3): roots 1.5 and 6
        {SystemSpec::prolate(2.4), {0.3, 1.0}},
        {SystemSpec::oblate(2.4), {0.3, 0.5}},
        {SystemSpec::oblate(2.4), {0.1, 1.2}},  // upper sub-chamber
        {SystemSpec::lame(0.4, 1.3, 3.2), {0.5, 0.8}},
        {SystemSpec::spherical23(), {0.3, 0.5}},
        {SystemSpec::cylindrical(), {0.3, 0.4}},
    };
    for (const auto& c : cases) {
        const ActionTriple J = action_triple(c.val, c.spec);
        CHECK(J.J1 >= 0.0);
        CHECK(J.J2 >= 0.0);
        CHECK(J.J3 >= 0.0);
        CHECK(J.sum() == doctest::Approx(std::sqrt(c.spec.two_h)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(action_triple({7.0, 12.5}, kEll), std::domain_error);
    CHECK_THROWS_AS(action_triple({0.0, -0.1}, SystemSpec::prolate(2.4)),
                    std::domain_error);
}

TEST_CASE("closed-form vertex actions of the (1,2,5,8) system") {
    const EllipsoidalVertices v = closed_form_vertices(kEll);
    // Transverse intersections: inverse-sine values, exact fractions here.
    check_triple(v.A31, {1.0 / 3.0, 2.0 / 3.0, 0.0}, 1e-12);
    check_triple(v.A12, {0.0, 0.5, 0.5}, 1e-12);
    // Tangency values: frozen against an independent high-precision
    // evaluation of the degenerate double-root integrals.
    check_triple(v.A21, {0.0996775148, 0.0, 0.9003224852}, 1e-8);
    check_triple(v.A22, {0.7326613780, 0.0, 0.2673386220}, 1e-8);
    for (const ActionTriple* t : {&v.A21, &v.A22, &v.A31, &v.A12, &v.HH})
        CHECK(t->sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(closed_form_vertices(SystemSpec::prolate(2.4)),
                    std::invalid_argument);
}

TEST_CASE("vertex actions agree with quadrature at the exact vertex values") {
    const EllipsoidalVertices v = closed_form_vertices(kEll);
    check_triple(action_triple({10.0, 16.0}, kEll), v.A31, 1e-6);  // d24
    check_triple(action_triple({6.0, 5.0}, kEll), v.A12, 1e-6);    // d13
    check_triple(action_triple({4.0, 4.0}, kEll), v.A21, 1e-6);    // tangency at e2
    check_triple(action_triple({10.0, 25.0}, kEll), v.A22, 1e-6);  // tangency at e3
    check_triple(action_triple({7.0, 10.0}, kEll), v.HH, 1e-6);    // d23
}

TEST_CASE("monodromy around the focus-focus value and a contractible loop") {
    const auto spec = SystemSpec::prolate(2.4);
    const MonodromyResult around = monodromy(spec, circle_loop(Vec2(0.0, 1.0), 0.3));
    CHECK(around.residual < 1e-6);
    Eigen::Matrix3i expect = Eigen::Matrix3i::Identity();
    expect(0, 1) = 2;
    expect(2, 1) = -2;
    CHECK(around.matrix == expect);
    const MonodromyResult trivial =
        monodromy(spec, circle_loop(Vec2(0.4, 0.5), 0.08));
    CHECK(trivial.matrix == Eigen::Matrix3i::Identity());
    CHECK(trivial.residual < 1e-6);
    // Loops meeting the bifurcation set are rejected.
    CHECK_THROWS_AS(monodromy(spec, circle_loop(Vec2(0.0, 1.0), 1.0)),
                    std::domain_error);
    CHECK_THROWS_AS(monodromy(kEll, circle_loop(Vec2(0.0, 1.0), 0.3)),
                    std::invalid_argument);
}

TEST_CASE("derivative jump across the isotropy axis flips at the critical level") {
    const auto spec = SystemSpec::prolate(2.4);
    CHECK(derivative_jump(spec, 0.5) == std::array<int, 2>{0, 1});
    CHECK(derivative_jump(spec, 1.5) == std::array<int, 2>{1, 0});
}

TEST_CASE("semitoric polygon of the prolate system") {
    const SemitoricPolygon poly = semitoric_polygon(SystemSpec::prolate(2.4));
    REQUIRE(poly.vertices.size() == 3);
    CHECK(poly.fake_corner == Vec2(0.0, 1.0));
    const double u = std::sqrt(1.0 / 2.4);
    CHECK(poly.height == doctest::Approx((2.0 / M_PI) * std::acos(u)).epsilon(1e-14));
    CHECK(poly.focus_focus[1] ==
          doctest::Approx((2.0 / M_PI) * std::asin(u)).epsilon(1e-14));
    CHECK(poly.height + poly.focus_focus[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("interior arcs: endpoints match their closed forms") {
    // Ellipsoidal: the two tangent-line images.
    const auto ell_arcs = interior_arcs(kEll);
    REQUIRE(ell_arcs.size() == 2);
    CHECK(ell_arcs[0].name == "gamma1");
    CHECK(ell_arcs[1].name == "gamma2");
    for (const auto& arc : ell_arcs) {
        check_triple(arc.at(arc.t0), arc.start, 1e-6);
        check_triple(arc.at(arc.t1), arc.end, 1e-6);
        CHECK(arc.at(0.5 * (arc.t0 + arc.t1)).sum() ==
              doctest::Approx(1.0).epsilon(1e-8));
    }

    // Oblate: the middle arc from the zero-isotropy point to the tangency.
    const auto obl_arcs = interior_arcs(SystemSpec::oblate(2.4));
    REQUIRE(obl_arcs.size() == 1);
    const auto& obl = obl_arcs.front();
    const double inv = 1.0 / std::sqrt(2.4);
    check_triple(obl.start,
                 {(2.0 / M_PI) * std::asin(inv), (2.0 / M_PI) * std::acos(inv), 0.0},
                 1e-12);
    const double lt = std::sqrt(1.4 / 2.4);
    check_triple(obl.end, {1.0 - lt, 0.0, lt}, 1e-12);
    check_triple(obl.at(obl.t0), obl.start, 1e-5);
    check_triple(obl.at(obl.t1 - 1e-6), obl.end, 1e-4);

    // Lame: the middle line from the Delta-split edge to the full action.
    const auto lam_arcs = interior_arcs(SystemSpec::lame(0.4, 1.3, 3.2));
    REQUIRE(lam_arcs.size() == 1);
    const auto& mid = lam_arcs.front();
    const double delta = std::sqrt(0.9 / 2.8);
    check_triple(mid.start,
                 {0.0, (2.0 / M_PI) * std::asin(delta), (2.0 / M_PI) * std::acos(delta)},
                 1e-12);
    check_triple(mid.at(mid.t0), mid.start, 1e-6);
    check_triple(mid.at(mid.t1 - 1e-9), mid.end, 1e-4);

    CHECK(interior_arcs(SystemSpec::cylindrical()).empty());
}

TEST_CASE("cylindrical and spherical actions are elementary") {
    const ActionTriple cyl = action_triple({0.3, 0.4}, SystemSpec::cylindrical());
    CHECK(cyl.J1 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(cyl.J2 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(cyl.J3 == doctest::Approx(0.4).epsilon(1e-15));
    const ActionTriple sph = action_triple({0.3, 0.5}, SystemSpec::spherical23());
    const double root = std::sqrt(0.5);
    CHECK(sph.J1 == doctest::Approx(1.0 - root).epsilon(1e-12));
    CHECK(sph.J2 == doctest::Approx(root - 0.3).epsilon(1e-12));
    CHECK(sph.J3 == doctest::Approx(0.3).epsilon(1e-15));
}
