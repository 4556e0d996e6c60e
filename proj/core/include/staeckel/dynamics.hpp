#pragma once

/** \file
    Trajectory integration used as an independent verification oracle:
    the constrained geodesic flow on T*S^3, the Lie-Poisson flow of any
    quadratic observable on so*(4), and the Euler-top substructure of the
    Lame family.
*/

#include "staeckel/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace staeckel {

/// Maximum drift |F(t) - F(0)| of a monitored quantity along a trajectory.
struct DriftRecord {
    std::string name;
    double initial = 0.0;
    double max_drift = 0.0;
};

/** An integrated trajectory: strictly increasing sample times with the
    corresponding states (8-vectors (x, y) for the geodesic flow,
    6-vectors L for reduced flows).  Drift records are tracked at every
    accepted integrator step, not only at the stored samples. */
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    std::vector<DriftRecord> drifts;

    double drift(const std::string& name) const;
};

/** Adaptive embedded Runge-Kutta 5(4) integration of the geodesic flow
    xdot = y, ydot = -(y.y) x with post-step projection onto the
    constraint set (x normalized, y orthogonalized).  Monitors the
    constraints, the energy, the two integrals of spec, every angular
    momentum, and the Plucker Casimir.  Throws std::runtime_error on
    step-size underflow. */
Trajectory integrate_geodesic(const CotangentPoint& p0, double T, double tol,
                              const SystemSpec& spec = SystemSpec{});

/** Integration of the Lie-Poisson flow Ldot = B_L grad f on so*(4).
    L is deliberately not projected back onto the symplectic leaf, so the
    Casimir drift is a genuine error diagnostic.  Additional observables
    can be monitored by name. */
Trajectory integrate_reduced(
    const Bivector& L0, const QuadraticObservable& f, double T, double tol,
    const std::vector<std::pair<std::string, QuadraticObservable>>& monitors = {});

/** Structure checks of the Lame family at L0: closure of the
    (l23, l24, l34) subsystem under the flow of the second integral, its
    match with the Euler-top field of inertia 1/f_i, agreement of the
    integrated subsystem with a standalone three-variable integration
    over time T, and the rotation form of the J1 flow (reported as
    singular, not thrown, on the sphere l12^2+l13^2+l14^2 = 2h). */
struct EulerCheckReport {
    bool on_singular_locus = false;
    double coupling_residual = 0.0;
    double euler_match_residual = 0.0;
    double rotation_residual = 0.0;
    double subsystem_mismatch = 0.0;
};

EulerCheckReport euler_substructure_check(const SystemSpec& spec, const Bivector& L0,
                                          double T);

}  // namespace staeckel
