#include "doctest.h"

#include <staeckel/quadrature.hpp>

#include <cmath>

using namespace staeckel;

TEST_CASE("polynomials and smooth integrands") {
    CHECK(integrate([](double s) { return s * s; }, 0.0, 3.0, 1e-12) ==
          doctest::Approx(9.0).epsilon(1e-13));
    CHECK(integrate([](double s) { return std::exp(s); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(integrate([](double s) { return std::sin(s); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("turning-point integrals: semicircle area and quarter arcs") {
    // int_a^b sqrt((s-a)(b-s)) ds = pi (b-a)^2 / 8.
    auto q = [](double s) { return (s - 1.0) * (4.0 - s); };
    CHECK(integrate_turning(q, 1.0, 4.0, 1e-12) ==
          doctest::Approx(M_PI * 9.0 / 8.0).epsilon(1e-12));
    // Degenerate interval gives zero.
    CHECK(integrate_turning(q, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("narrow near-pole feature converges at tight tolerance") {
    // sqrt((r-s)/ (1-s)^2 ... ) shape with the pole 5e-10 past the root,
    // the geometry that arises at |l| ~ 1e-5 near a focus-focus value.
    const double r = 1.0 - 4.7e-10;
    auto q = [&](double s) { return (r - s) * (2.0 - s) / ((1.0 - s) * (1.0 - s)); };
    const double v = integrate_turning(q, 0.0, r, 1e-12);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
    // The l -> 0 limit of this integral: q0 = (1-s)(2-s)/(1-s)^2 = (2-s)/(1-s).
    const double v0 =
        integrate_turning([](double s) { return (2.0 - s) / (1.0 - s); }, 0.0, 1.0, 1e-12);
    CHECK(v == doctest::Approx(v0).epsilon(5e-5));
}

TEST_CASE("inverse-square-root endpoint handled by the sine substitution") {
    // int_0^1 1/sqrt(s(1-s)) ds = pi, via q = 1/(s(1-s)).
    auto q = [](double s) { return 1.0 / (s * (1.0 - s)); };
    CHECK(integrate_turning(q, 0.0, 1.0, 1e-12) ==
          doctest::Approx(M_PI).epsilon(1e-12));
}
