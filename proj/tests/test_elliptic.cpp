#include "doctest.h"

#include <stdexcept>

#include <staeckel/elliptic.hpp>
#include <staeckel/quadrature.hpp>

#include <cmath>

using namespace staeckel;

TEST_CASE("Carlson special values") {
    CHECK(carlson_rf(1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(carlson_rf(4.0, 4.0, 4.0) == doctest::Approx(0.5).epsilon(1e-14));
    // R_F(0, 1, 2) = Gamma(1/4)^2 / (4 sqrt(2 pi)).
    const double g14 = 3.62561;  // Gamma(1/4) to 6 digits
    CHECK(carlson_rf(0.0, 1.0, 2.0) ==
          doctest::Approx(g14 * g14 / (4.0 * std::sqrt(2.0 * M_PI))).epsilon(1e-5));
    CHECK(carlson_rc(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // R_C(0, y) = pi / (2 sqrt(y)).
    CHECK(carlson_rc(0.0, 4.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
    CHECK(carlson_rj(2.0, 2.0, 2.0, 2.0) ==
          doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-13));
}

TEST_CASE("Legendre K against direct quadrature") {
    CHECK(complete_elliptic_k(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    for (double k : {0.1, 0.5, 0.9, 0.99}) {
        const double direct = integrate(
            [k](double t) {
                const double s = std::sin(t);
                return 1.0 / std::sqrt(1.0 - k * k * s * s);
            },
            0.0, M_PI / 2.0, 1e-13);
        CHECK(complete_elliptic_k(k) == doctest::Approx(direct).epsilon(1e-12));
    }
    CHECK_THROWS_AS(complete_elliptic_k(1.0), std::domain_error);
}

TEST_CASE("Legendre Pi against direct quadrature") {
    for (double k : {0.2, 0.7}) {
        CHECK(complete_elliptic_pi(0.0, k) ==
              doctest::Approx(complete_elliptic_k(k)).epsilon(1e-13));
        for (double alpha : {-0.75, -0.1538775, 0.3}) {
            const double direct = integrate(
                [k, alpha](double t) {
                    const double s2 = std::sin(t) * std::sin(t);
                    return 1.0 / ((1.0 - alpha * s2) * std::sqrt(1.0 - k * k * s2));
                },
                0.0, M_PI / 2.0, 1e-13);
            CHECK(complete_elliptic_pi(alpha, k) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(complete_elliptic_pi(1.0, 0.5), std::domain_error);
}
