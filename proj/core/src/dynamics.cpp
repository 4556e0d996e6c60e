#include "staeckel/dynamics.hpp"

#include "staeckel/so4.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace staeckel {

namespace {

/// Internal tightening of the user tolerance: the accepted local error
/// per unit time is tol * kTighten, so that drift over T = 1e3 stays
/// well below the requested tolerance.
constexpr double kTighten = 1e-3;
constexpr std::size_t kMaxStored = 4096;

using Field = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using Projection = std::function<void(Eigen::VectorXd&)>;

struct Observer {
    std::string name;
    std::function<double(const Eigen::VectorXd&)> eval;
};

/** One embedded Dormand-Prince 5(4) step; returns the 5th-order result
    and writes the embedded error estimate. */
Eigen::VectorXd dp_step(const Field& f, const Eigen::VectorXd& y, double dt,
                        Eigen::VectorXd& err) {
    const Eigen::VectorXd k1 = f(y);
    const Eigen::VectorXd k2 = f(y + dt * (k1 / 5.0));
    const Eigen::VectorXd k3 = f(y + dt * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const Eigen::VectorXd k4 =
        f(y + dt * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    const Eigen::VectorXd k5 =
        f(y + dt * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                    64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const Eigen::VectorXd k6 =
        f(y + dt * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                    46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                    5103.0 / 18656.0 * k5));
    const Eigen::VectorXd y5 =
        y + dt * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                  2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    const Eigen::VectorXd k7 = f(y5);
    const Eigen::VectorXd y4 =
        y + dt * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                  393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                  187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
    err = y5 - y4;
    return y5;
}

Trajectory rk45(const Field& f, Eigen::VectorXd y, double T, double tol,
                const Projection& project, const std::vector<Observer>& observers) {
    Trajectory traj;
    for (const auto& obs : observers)
        traj.drifts.push_back(DriftRecord{obs.name, obs.eval(y), 0.0});

    std::size_t stride = 1, since_stored = 0;
    auto store = [&](double t, const Eigen::VectorXd& state) {
        if (since_stored++ % stride != 0) return;
        if (traj.times.size() >= kMaxStored) {
            // Thin out: keep every other stored sample and double the stride.
            std::size_t w = 0;
            for (std::size_t r = 0; r < traj.times.size(); r += 2, ++w) {
                traj.times[w] = traj.times[r];
                traj.states[w] = traj.states[r];
            }
            traj.times.resize(w);
            traj.states.resize(w);
            stride *= 2;
        }
        traj.times.push_back(t);
        traj.states.push_back(state);
    };

    const double tol_eff = tol * kTighten;
    double t = 0.0;
    double dt = std::min(1e-3, T);
    store(0.0, y);
    Eigen::VectorXd err(y.size());
    while (t < T) {
        dt = std::min(dt, T - t);
        if (dt < 1e-14 * std::max(1.0, T))
            throw std::runtime_error("rk45: step size underflow");
        Eigen::VectorXd ynew = dp_step(f, y, dt, err);
        const double enorm = err.norm();
        const double allowed = tol_eff * dt;
        if (enorm <= allowed) {
            t += dt;
            y = std::move(ynew);
            if (project) project(y);
            for (std::size_t i = 0; i < observers.size(); ++i)
                traj.drifts[i].max_drift =
                    std::max(traj.drifts[i].max_drift,
                             std::abs(observers[i].eval(y) - traj.drifts[i].initial));
            store(t, y);
        }
        const double factor =
            enorm > 0.0 ? 0.9 * std::pow(allowed / enorm, 0.2) : 5.0;
        dt *= std::clamp(factor, 0.2, 5.0);
    }
    if (traj.times.back() != t) {
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

Vec6 momenta_of(const Eigen::VectorXd& s) {
    return wedge(s.head<4>(), s.tail<4>()).vec();
}

}  // namespace

double Trajectory::drift(const std::string& name) const {
    for (const auto& d : drifts)
        if (d.name == name) return d.max_drift;
    throw std::invalid_argument("Trajectory::drift: no record named " + name);
}

Trajectory integrate_geodesic(const CotangentPoint& p0, double T, double tol,
                              const SystemSpec& spec) {
    spec.validate();
    const auto [f, g] = build_integrals(spec);

    Field field = [](const Eigen::VectorXd& s) {
        Eigen::VectorXd ds(8);
        const Vec4 x = s.head<4>(), y = s.tail<4>();
        ds.head<4>() = y;
        ds.tail<4>() = -y.squaredNorm() * x;
        return ds;
    };
    Projection project = [](Eigen::VectorXd& s) {
        Vec4 x = s.head<4>(), y = s.tail<4>();
        x /= x.norm();
        y -= x.dot(y) * x;
        s.head<4>() = x;
        s.tail<4>() = y;
    };

    std::vector<Observer> obs;
    obs.push_back({"constraint_x", [](const Eigen::VectorXd& s) {
                       return s.head<4>().squaredNorm();
                   }});
    obs.push_back({"constraint_xy", [](const Eigen::VectorXd& s) {
                       return s.head<4>().dot(s.tail<4>());
                   }});
    obs.push_back({"H", [](const Eigen::VectorXd& s) {
                       return 0.5 * s.tail<4>().squaredNorm();
                   }});
    obs.push_back({"v1", [f = f](const Eigen::VectorXd& s) {
                       return f.value(momenta_of(s));
                   }});
    obs.push_back({"v2", [g = g](const Eigen::VectorXd& s) {
                       return g.value(momenta_of(s));
                   }});
    static const char* kNames[6] = {"l12", "l13", "l14", "l23", "l24", "l34"};
    for (int k = 0; k < 6; ++k)
        obs.push_back({kNames[k], [k](const Eigen::VectorXd& s) {
                           return momenta_of(s)[k];
                       }});
    obs.push_back({"casimir2", [](const Eigen::VectorXd& s) {
                       return casimirs(Bivector::of(momenta_of(s))).second;
                   }});

    Eigen::VectorXd y0(8);
    y0.head<4>() = p0.x();
    y0.tail<4>() = p0.y();
    return rk45(field, y0, T, tol, project, obs);
}

Trajectory integrate_reduced(
    const Bivector& L0, const QuadraticObservable& f, double T, double tol,
    const std::vector<std::pair<std::string, QuadraticObservable>>& monitors) {
    Field field = [f](const Eigen::VectorXd& s) {
        const Vec6 L = s;
        Eigen::VectorXd ds = structure_matrix(L) * f.gradient(L);
        return ds;
    };

    std::vector<Observer> obs;
    obs.push_back({"casimir1", [](const Eigen::VectorXd& s) {
                       return s.squaredNorm();
                   }});
    obs.push_back({"casimir2", [](const Eigen::VectorXd& s) {
                       return casimirs(Bivector::of(s)).second;
                   }});
    obs.push_back({"generator", [f](const Eigen::VectorXd& s) {
                       return f.value(Vec6(s));
                   }});
    for (const auto& [name, h] : monitors)
        obs.push_back({name, [h](const Eigen::VectorXd& s) {
                           return h.value(Vec6(s));
                       }});

    return rk45(field, L0.vec(), T, tol, nullptr, obs);
}

EulerCheckReport euler_substructure_check(const SystemSpec& spec, const Bivector& L0,
                                          double T) {
    spec.validate();
    if (spec.family != Family::Lame)
        throw std::invalid_argument(
            "euler_substructure_check: requires the Lame family");
    const auto& f = spec.f;
    const auto [F, G] = build_integrals(spec);
    EulerCheckReport report;

    auto euler_field = [&](const Vec3& u) {
        return Vec3(2.0 * (f[1] - f[0]) * u[1] * u[2],
                    2.0 * (f[0] - f[2]) * u[0] * u[2],
                    2.0 * (f[2] - f[1]) * u[0] * u[1]);
    };
    auto sub_field = [&](const Vec6& L) {
        const Vec6 V = structure_matrix(L) * G.gradient(L);
        return Vec3(V[3], V[4], V[5]);
    };

    // Closure: the subsystem components must not depend on (l12, l13, l14).
    const Vec6 base = L0.vec();
    const Vec3 at_base = sub_field(base);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        Vec6 probe = base;
        for (int k = 0; k < 3; ++k) probe[k] = uni(rng);
        report.coupling_residual = std::max(
            report.coupling_residual, (sub_field(probe) - at_base).norm());
        report.euler_match_residual = std::max(
            report.euler_match_residual,
            (sub_field(probe) - euler_field(probe.tail<3>())).norm());
    }
    report.euler_match_residual = std::max(
        report.euler_match_residual, (at_base - euler_field(base.tail<3>())).norm());

    // J1 flow: grad J1 = (l12, l13, l14, 0, 0, 0) / sqrt(2h - F_L), whose
    // Lie-Poisson field is the unit-speed rotation about (l34, -l24, l23).
    const double FL = base.head<3>().squaredNorm();
    if (std::abs(FL - spec.two_h) < 1e-9 * std::max(1.0, spec.two_h)) {
        report.on_singular_locus = true;
    } else {
        Vec6 gradJ1 = Vec6::Zero();
        gradJ1.head<3>() = base.head<3>() / std::sqrt(spec.two_h - FL);
        const Vec6 V = structure_matrix(base) * gradJ1;
        const Vec3 axis(base[5], -base[4], base[3]);
        const Vec3 n = axis.norm() > 0 ? Vec3(axis / axis.norm()) : Vec3(Vec3::Zero());
        const Vec3 head = base.head<3>();
        const double rot_plus = (Vec3(V.head<3>()) - n.cross(head)).norm();
        const double rot_minus = (Vec3(V.head<3>()) + n.cross(head)).norm();
        report.rotation_residual =
            std::max(std::min(rot_plus, rot_minus), Vec3(V.tail<3>()).norm());
    }

    // Integrated subsystem vs a standalone three-variable Euler top.
    const Trajectory full = integrate_reduced(L0, G, T, 1e-10);
    Field three = [&](const Eigen::VectorXd& u) {
        Eigen::VectorXd du = euler_field(Vec3(u));
        return du;
    };
    Eigen::VectorXd u0 = base.tail<3>();
    const Trajectory sub = rk45(three, u0, T, 1e-10, nullptr, {});
    report.subsystem_mismatch =
        (full.states.back().tail<3>() - sub.states.back()).norm();
    return report;
}

}  // namespace staeckel
