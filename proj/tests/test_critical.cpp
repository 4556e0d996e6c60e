#include "doctest.h"

#include <stdexcept>

#include <staeckel/critical.hpp>
#include <staeckel/so4.hpp>

#include <cmath>

using namespace staeckel;

namespace {

const SystemSpec kEll = SystemSpec::ellipsoidal(1, 2, 5, 8);

bool has_vertex(const std::vector<BifurcationCurve>& curves, double v1, double v2) {
    for (const auto& c : curves)
        for (const auto& v : c.vertices)
            if (v[0] == v1 && v[1] == v2) return true;
    return false;
}

void check_on_leaf(const CriticalArc& arc, const SystemSpec& spec,
                   const IntegralValues& value) {
    for (double u : {0.0, 0.37, 0.81, 1.0}) {
        const Bivector L = arc.at(arc.t0 + u * (arc.t1 - arc.t0));
        const auto [c1, c2] = casimirs(L);
        CHECK(c1 == doctest::Approx(spec.two_h).epsilon(1e-9));
        CHECK(std::abs(c2) < 1e-9);
        const IntegralValues v = integral_values(L, spec);
        CHECK(v.v1 == doctest::Approx(value.v1).epsilon(1e-8));
        CHECK(v.v2 == doctest::Approx(value.v2).epsilon(1e-8));
    }
}

}  // namespace

TEST_CASE("ellipsoidal bifurcation set carries the eight distinguished values") {
    const auto curves = bifurcation_set(kEll);
    REQUIRE(curves.size() == 5);
    // Four lines plus the tangent parabola, each with its color tag.
    CHECK(curves[0].name == "L1");
    CHECK(curves[4].kind == CurveKind::Parabola);
    CHECK(curves[0].color == "blue");
    CHECK(curves[4].color == "cyan");
    // Pairwise line intersections d_ij and the two tangency values.
    CHECK(has_vertex(curves, 3, 2));
    CHECK(has_vertex(curves, 6, 5));
    CHECK(has_vertex(curves, 9, 8));
    CHECK(has_vertex(curves, 7, 10));
    CHECK(has_vertex(curves, 10, 16));
    CHECK(has_vertex(curves, 13, 40));
    CHECK(has_vertex(curves, 4, 4));
    CHECK(has_vertex(curves, 10, 25));
}

TEST_CASE("bifurcation curves of the other families: structure and segments") {
    struct Expect {
        SystemSpec spec;
        size_t count;
    };
    const Expect table[] = {{SystemSpec::prolate(2.4), 3},
                            {SystemSpec::oblate(2.4), 3},
                            {SystemSpec::lame(0.4, 1.3, 3.2), 5},
                            {SystemSpec::spherical23(), 3},
                            {SystemSpec::cylindrical(), 4}};
    for (const auto& e : table) {
        const auto curves = bifurcation_set(e.spec);
        CHECK(curves.size() == e.count);
        for (const auto& c : curves) {
            if (c.t1 <= c.t0) continue;  // point curves have no segmentation
            REQUIRE(!c.segments.empty());
            CHECK(c.segments.front().t0 == doctest::Approx(c.t0));
            CHECK(c.segments.back().t1 == doctest::Approx(c.t1));
            for (size_t i = 1; i < c.segments.size(); ++i)
                CHECK(c.segments[i].t0 == doctest::Approx(c.segments[i - 1].t1));
        }
    }
    // The prolate focus-focus value is an isolated point curve.
    const auto pro = bifurcation_set(SystemSpec::prolate(2.4));
    CHECK(pro[2].name == "FF");
    CHECK(pro[2].t0 == pro[2].t1);
    CHECK(pro[2].at(0.0)[0] == 0.0);
    CHECK(pro[2].at(0.0)[1] == 1.0);
}

TEST_CASE("rank-0 classification at the coordinate critical circles") {
    const double r = 1.0;
    // Components named by the invariant plane of the circle; the critical
    // circle over d_ij is carried by the complementary component.
    CHECK(classify(Bivector{0, 0, 0, 0, 0, r}, kEll) ==
          SingularityType::EllipticElliptic);  // d12
    CHECK(classify(Bivector{0, 0, 0, r, 0, 0}, kEll) ==
          SingularityType::EllipticElliptic);  // d14
    CHECK(classify(Bivector{r, 0, 0, 0, 0, 0}, kEll) ==
          SingularityType::EllipticElliptic);  // d34
    CHECK(classify(Bivector{0, 0, 0, 0, r, 0}, kEll) ==
          SingularityType::EllipticHyperbolic);  // d13
    CHECK(classify(Bivector{0, r, 0, 0, 0, 0}, kEll) ==
          SingularityType::EllipticHyperbolic);  // d24
    CHECK(classify(Bivector{0, 0, r, 0, 0, 0}, kEll) ==
          SingularityType::HyperbolicHyperbolic);  // d23
}

TEST_CASE("degenerate tangency values and the focus-focus point") {
    // Tangency values of the line/parabola contact: double-root circles.
    for (const IntegralValues val : {IntegralValues{4, 4}, IntegralValues{10, 25}}) {
        const auto arcs = critical_points(kEll, val);
        REQUIRE(!arcs.empty());
        bool found = false;
        for (const auto& a : arcs) {
            const Bivector L = a.at(0.25 * (a.t0 + a.t1) + 0.3);
            if (classify(L, kEll) == SingularityType::Degenerate) found = true;
        }
        CHECK(found);
    }
    // Prolate focus-focus point over (0, 2h).
    const auto pro = SystemSpec::prolate(2.4);
    const auto ff = critical_points(pro, {0.0, 1.0});
    REQUIRE(!ff.empty());
    CHECK(classify(ff.front().at(0.0), pro) == SingularityType::FocusFocus);
    // Spherical-type rank-drop points of the Lame and spherical limits.
    CHECK(classify(Bivector{1, 0, 0, 0, 0, 0}, SystemSpec::lame(0.4, 1.3, 3.2)) ==
          SingularityType::SphericalType);
    CHECK(classify(Bivector{1, 0, 0, 0, 0, 0}, SystemSpec::spherical23()) ==
          SingularityType::SphericalType);
}

TEST_CASE("regular points classify as regular") {
    std::mt19937_64 rng(5);
    int regular = 0;
    for (int i = 0; i < 50; ++i) {
        const Bivector L = random_leaf_point(rng);
        if (classify(L, kEll) == SingularityType::Regular) ++regular;
    }
    CHECK(regular == 50);  // critical points have measure zero
}

TEST_CASE("chamber codes and fibre multiplicities") {
    // Near the hyperbolic vertex (7, 10): chamber IV above, I/III below.
    const auto up = chamber({7.0, 10.3}, kEll);
    CHECK(!up.outside);
    CHECK(up.code == std::array<int, 2>{2, 2});
    CHECK(up.multiplicity == 4);
    const auto down = chamber({7.0, 9.7}, kEll);
    CHECK(!down.outside);
    CHECK(down.code == std::array<int, 2>{1, 3});
    CHECK(down.multiplicity == 2);
    CHECK(chamber({7.0, 12.5}, kEll).outside);
    // Non-ellipsoidal families: one regular chamber.
    const auto pro = chamber({0.3, 1.1}, SystemSpec::prolate(2.4));
    CHECK(!pro.outside);
    CHECK(pro.code == std::array<int, 2>{1, 1});
    CHECK(pro.multiplicity == 1);
}

TEST_CASE("critical arcs lie on the leaf over their value") {
    struct Case {
        SystemSpec spec;
        IntegralValues val;
    };
    const Case cases[] = {
        {kEll, {6.5, 9.0}},                             // on L2
        {kEll, {6.0, 9.0}},                             // on the parabola, lam = 3
        {SystemSpec::prolate(2.4), {0.3, 2.184}},       // boundary parabola
        {SystemSpec::prolate(2.4), {0.3, 0.0}},         // zero level
        {SystemSpec::oblate(2.4), {0.2, 0.96}},         // middle parabola
        {SystemSpec::oblate(2.4), {0.2, 0.0}},          // zero level
        {SystemSpec::lame(0.4, 1.3, 3.2), {0.5, 0.65}},  // line L2
        {SystemSpec::lame(0.4, 1.3, 3.2), {0.0, 0.65}},  // F = 0 segment
        {SystemSpec::spherical23(), {0.3, 0.91}},       // parabola
        {SystemSpec::cylindrical(), {0.4, 0.6}},        // diamond edge
        {SystemSpec::cylindrical(), {0.4, -0.6}},
    };
    for (const auto& c : cases) {
        const auto arcs = critical_points(c.spec, c.val);
        REQUIRE(!arcs.empty());
        for (const auto& a : arcs) check_on_leaf(a, c.spec, c.val);
    }
    // Oblate outer boundary: rim value at l = 0.2.
    const double rim = std::sqrt(2.4) - std::sqrt(1.4) * 0.2;
    const IntegralValues o1{0.2, rim * rim};
    for (const auto& a : critical_points(SystemSpec::oblate(2.4), o1))
        check_on_leaf(a, SystemSpec::oblate(2.4), o1);
}

TEST_CASE("critical_points rejects values off the bifurcation set") {
    CHECK_THROWS_AS(critical_points(kEll, {3.0, 7.0}), std::domain_error);
    CHECK_THROWS_AS(critical_points(SystemSpec::prolate(2.4), {0.3, 0.5}),
                    std::domain_error);
}

TEST_CASE("Uhlenbeck integrals") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const Bivector L = random_leaf_point(rng);
        const Vec4 F = uhlenbeck(L, kEll);
        CHECK(std::abs(F.sum()) < 1e-12);
    }
    // A bivector supported on one pair gives the two-term pattern.
    const Vec4 F = uhlenbeck(Bivector{1, 0, 0, 0, 0, 0}, kEll);  // pair (1,2)
    CHECK(F[0] == doctest::Approx(1.0 / (1.0 - 2.0)));
    CHECK(F[1] == doctest::Approx(-F[0]));
    CHECK(F[2] == 0.0);
    CHECK(F[3] == 0.0);
    // Lame: the first component is minus the sphere integral F_L.
    const Vec4 FL = uhlenbeck(Bivector{0.6, 0.8, 0, 0, 0, 0},
                              SystemSpec::lame(0.4, 1.3, 3.2));
    CHECK(FL[0] == doctest::Approx(-1.0));
    CHECK_THROWS_AS(uhlenbeck(Bivector{}, SystemSpec::spherical23()), std::domain_error);
    CHECK_THROWS_AS(uhlenbeck(Bivector{}, SystemSpec::cylindrical()), std::domain_error);
}
