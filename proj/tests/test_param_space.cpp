#include "doctest.h"

#include <stdexcept>

#include <staeckel/param_space.hpp>
#include <staeckel/so4.hpp>

#include <cmath>
#include <random>

using namespace staeckel;

TEST_CASE("normalize maps ordered quadruples to (0, 1, a, b)") {
    const auto [spec, rec] = normalize({1, 2, 5, 8});
    CHECK(spec.e[0] == 0.0);
    CHECK(spec.e[1] == 1.0);
    CHECK(spec.e[2] == doctest::Approx(4.0));
    CHECK(spec.e[3] == doctest::Approx(7.0));
    CHECK(rec.alpha == doctest::Approx(1.0));
    CHECK(rec.beta == doctest::Approx(-1.0));
    const auto [spec2, rec2] = normalize({-3, 1, 5, 13});
    CHECK(spec2.e[0] == 0.0);
    CHECK(spec2.e[1] == 1.0);
    CHECK(spec2.e[2] == doctest::Approx(2.0));
    CHECK(spec2.e[3] == doctest::Approx(4.0));
    CHECK(rec2.alpha == doctest::Approx(4.0));
}

TEST_CASE("transform_integral_values matches re-evaluated integrals") {
    std::mt19937_64 rng(3);
    const double alpha = 0.5, beta = 1.7;
    const auto spec = SystemSpec::ellipsoidal(1, 2, 5, 8);
    const auto shifted = SystemSpec::ellipsoidal(
        alpha * 1 + beta, alpha * 2 + beta, alpha * 5 + beta, alpha * 8 + beta);
    for (int trial = 0; trial < 20; ++trial) {
        const Bivector L = random_leaf_point(rng);
        const IntegralValues eta = integral_values(L, spec);
        const IntegralValues mapped =
            transform_integral_values(eta, alpha, beta, 0.5);  // 2h = 1
        const IntegralValues direct = integral_values(L, shifted);
        CHECK(mapped.v1 == doctest::Approx(direct.v1).epsilon(1e-12));
        CHECK(mapped.v2 == doctest::Approx(direct.v2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(transform_integral_values({1, 1}, 0.0, 1.0, 0.5),
                    std::domain_error);
}

TEST_CASE("involution of the parameter triangle") {
    const auto [a2, b2] = involution(2.0, 3.0);
    CHECK(a2 == doctest::Approx(2.0).epsilon(1e-14));  // (3-1)/(3-2)
    CHECK(b2 == doctest::Approx(3.0).epsilon(1e-14));  // fixed: 1/3 + 2/3 = 1
    const auto [a3, b3] = involution(1.5, 4.0);
    const auto [a4, b4] = involution(a3, b3);
    CHECK(a4 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b4 == doctest::Approx(4.0).epsilon(1e-12));
    // Any point of the fixed line 1/b + a/b = 1, i.e. a = b - 1.
    const auto [af, bf] = involution(2.4, 3.4);
    CHECK(af == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(bf == doctest::Approx(3.4).epsilon(1e-12));
}

TEST_CASE("blow-up chart at the Lame corner") {
    const BlowupChart c = blowup(1.2, 1.5);
    CHECK(c.q == doctest::Approx(1.0 / 1.5).epsilon(1e-14));
    CHECK(c.r == doctest::Approx(0.2 / 0.5).epsilon(1e-14));
    CHECK(c.q >= (1.0 - c.r) / (2.0 - c.r) - 1e-12);
    CHECK_THROWS_AS(blowup(1.0, 1.0), std::domain_error);
}

TEST_CASE("degeneration edges: prediction error shrinks linearly in epsilon") {
    const auto ell = SystemSpec::ellipsoidal(1, 2, 5, 8);
    struct Edge {
        SystemSpec from;
        Family to;
    };
    const Edge edges[] = {
        {ell, Family::Prolate},
        {ell, Family::Oblate},
        {ell, Family::Lame},
        {ell, Family::Cylindrical},
        {SystemSpec::lame(0.4, 1.3, 3.2), Family::Spherical23},
        {SystemSpec::oblate(2.4), Family::Spherical23},
    };
    for (const auto& edge : edges) {
        double err[2];
        const double eps[2] = {1e-2, 1e-3};
        for (int k = 0; k < 2; ++k) {
            const DegenerationPath path = degeneration_path(edge.from, edge.to, eps[k]);
            std::mt19937_64 rng(99);
            double worst = 0.0;
            for (int i = 0; i < 200; ++i) {
                const Bivector L = random_leaf_point(rng);
                const IntegralValues sv = integral_values(L, path.source);
                const IntegralValues pred = path.predict(sv, 1.0);
                const IntegralValues tv = integral_values(L, path.target);
                const double t1 = path.v1_is_squared ? tv.v1 * tv.v1 : tv.v1;
                const double t2 = path.v2_is_squared ? tv.v2 * tv.v2 : tv.v2;
                worst = std::max({worst, std::abs(pred.v1 - t1), std::abs(pred.v2 - t2)});
            }
            err[k] = worst;
        }
        const double slope = std::log10(err[0] / err[1]);
        CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
    }
    CHECK_THROWS_AS(degeneration_path(SystemSpec::prolate(2.4), Family::Oblate, 1e-3),
                    std::domain_error);
}
