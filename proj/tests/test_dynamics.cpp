#include "doctest.h"

#include <stdexcept>

#include <staeckel/dynamics.hpp>
#include <staeckel/so4.hpp>

#include <cmath>
#include <random>

using namespace staeckel;

namespace {
std::mt19937_64 rng(31);
}

TEST_CASE("geodesics are great circles of period 2 pi") {
    const CotangentPoint p0 = random_cotangent_point(rng);
    const Trajectory traj = integrate_geodesic(p0, 2.0 * M_PI, 1e-12);
    REQUIRE(!traj.states.empty());
    const Eigen::VectorXd& last = traj.states.back();
    Eigen::VectorXd first(8);
    first << p0.x(), p0.y();
    CHECK((last - first).norm() < 1e-9);
    // Interior samples follow x(t) = x0 cos t + y0 sin t.
    for (size_t i = 0; i < traj.times.size(); i += traj.times.size() / 7 + 1) {
        const double t = traj.times[i];
        const Vec4 expect = p0.x() * std::cos(t) + p0.y() * std::sin(t);
        CHECK((traj.states[i].head<4>() - expect).norm() < 1e-9);
    }
}

TEST_CASE("geodesic flow conserves constraints, integrals and momenta") {
    const SystemSpec specs[] = {
        SystemSpec::ellipsoidal(1, 2, 5, 8), SystemSpec::prolate(2.4),
        SystemSpec::oblate(2.4),             SystemSpec::lame(0.4, 1.3, 3.2),
        SystemSpec::spherical23(),           SystemSpec::cylindrical()};
    for (const auto& spec : specs) {
        const Trajectory traj =
            integrate_geodesic(random_cotangent_point(rng), 50.0, 1e-10, spec);
        REQUIRE(!traj.drifts.empty());
        for (const auto& d : traj.drifts) CHECK(d.max_drift < 1e-8);
    }
}

TEST_CASE("reduced flow without leaf projection: Casimir drift stays tiny") {
    const auto spec = SystemSpec::ellipsoidal(1, 2, 5, 8);
    auto [f, g] = build_integrals(spec);
    const Bivector L0 = random_leaf_point(rng);
    const Trajectory traj = integrate_reduced(L0, f, 100.0, 1e-10, {{"second", g}});
    CHECK(traj.drift("second") < 1e-8);
    // Both Casimirs and the generator are monitored by default.
    CHECK(traj.drift("casimir1") < 1e-8);
    CHECK(traj.drift("casimir2") < 1e-8);
    CHECK(traj.drift("generator") < 1e-8);
    CHECK_THROWS_AS(traj.drift("no-such-monitor"), std::invalid_argument);
}

TEST_CASE("flow of a linear observable is a rigid rotation (periodic)") {
    Vec6 x1 = Vec6::Zero();
    x1[0] = 0.5;
    x1[5] = 0.5;  // (l12 + l34) / 2
    const auto f = QuadraticObservable::linear(x1);
    const Bivector L0 = random_leaf_point(rng);
    const Trajectory traj = integrate_reduced(L0, f, 2.0 * M_PI, 1e-11);
    CHECK((traj.states.back() - traj.states.front()).norm() < 1e-8);
}

TEST_CASE("Euler-top substructure of the Lame family") {
    const auto spec = SystemSpec::lame(0.4, 1.3, 3.2);
    const Bivector L0 = random_leaf_point(rng);
    const EulerCheckReport rep = euler_substructure_check(spec, L0, 20.0);
    CHECK(!rep.on_singular_locus);
    CHECK(rep.coupling_residual < 1e-10);
    CHECK(rep.euler_match_residual < 1e-10);
    CHECK(rep.rotation_residual < 1e-10);
    CHECK(rep.subsystem_mismatch < 1e-8);
    // On the sphere l12^2 + l13^2 + l14^2 = 2h the check reports the
    // singular locus instead of throwing.
    const Bivector Ls{0.6, 0.48, std::sqrt(1.0 - 0.36 - 0.2304), 0, 0, 0};
    CHECK(euler_substructure_check(spec, Ls, 5.0).on_singular_locus);
}
