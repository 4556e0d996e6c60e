#include "staeckel/actions.hpp"

#include "staeckel/critical.hpp"
#include "staeckel/quadrature.hpp"
#include "staeckel/separation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr double kVanishing = 1e-12;  ///< intervals below this give J = 0
constexpr double kTwoOverPi = 2.0 / M_PI;

/// (2/pi) int_lo^hi sqrt(max(0, p^2)) ds on one separation branch.
double branch_action(const IntegralValues& values, const SystemSpec& spec,
                     int branch, double lo, double hi, double tol) {
    if (!(hi - lo > kVanishing)) return 0.0;
    auto q = [&](double s) { return separated_momentum_sq(s, branch, values, spec); };
    return kTwoOverPi * integrate_turning(q, lo, hi, tol);
}

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

/** Action component at a parabola tangency value.  There the separated
    polynomial has a double root at lambda, the radical degenerates, and
    the action over the gap [lo, hi] becomes a complete elliptic
    integral.  The published characteristics for these integrals do not
    reproduce the quadrature values, so we evaluate them numerically:
    after the sine substitution that removes the endpoint poles the
    integrand is smooth (o1, o2 are the two roots off the interval). */
double double_root_action(double H2, double lambda, double lo, double hi,
                          double o1, double o2) {
    const double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    const double amp = 0.5 * std::sqrt(H2);
    auto g = [=](double theta) {
        const double s = m + w * std::sin(theta);
        return amp * std::abs(s - lambda) / std::sqrt(std::abs((s - o1) * (s - o2)));
    };
    return kTwoOverPi * integrate(g, -0.5 * M_PI, 0.5 * M_PI, 1e-13);
}

}  // namespace

ActionTriple action_triple(const IntegralValues& values, const SystemSpec& spec,
                           double tol) {
    spec.validate();
    if (chamber(values, spec).outside)
        throw std::domain_error("action_triple: value outside the momentum-map image");
    const double H2 = spec.two_h;
    const TurningRoots tr = turning_roots(values, spec);
    ActionTriple J;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            const double r1 = std::min(std::max(tr.r1, e[0]), e[3]);
            const double r2 = std::min(std::max(tr.r2, e[0]), e[3]);
            J.J1 = branch_action(values, spec, 0, e[0], std::min(r1, e[1]), tol);
            J.J2 = branch_action(values, spec, 1, std::max(r1, e[1]),
                                 std::min(r2, e[2]), tol);
            J.J3 = branch_action(values, spec, 2, std::max(r2, e[2]), e[3], tol);
            return J;
        }
        case Family::Prolate:
            J.J1 = branch_action(values, spec, 0, 0.0, std::min(tr.r1, 1.0), tol);
            J.J2 = std::abs(values.v1);
            J.J3 = branch_action(values, spec, 2, std::max(tr.r2, 1.0), spec.b, tol);
            return J;
        case Family::Oblate:
            J.J1 = branch_action(values, spec, 0, 0.0, std::min(tr.r1, 1.0), tol);
            J.J2 = branch_action(values, spec, 1, std::max(tr.r1, 1.0),
                                 std::min(tr.r2, spec.a), tol);
            J.J3 = std::abs(values.v1);
            return J;
        case Family::Lame: {
            // The first action has the closed form sqrt(2h) - sqrt(2h - F).
            J.J1 = std::sqrt(H2) - safe_sqrt(H2 - values.v1);
            const double r2 = tr.r2;
            J.J2 = branch_action(values, spec, 1, spec.f[0],
                                 std::min(r2, spec.f[1]), tol);
            J.J3 = branch_action(values, spec, 2, std::max(r2, spec.f[1]),
                                 spec.f[2], tol);
            return J;
        }
        case Family::Spherical23: {
            const double root = safe_sqrt(H2 - values.v2);
            J.J1 = std::sqrt(H2) - root;
            J.J2 = std::max(0.0, root - std::abs(values.v1));
            J.J3 = std::abs(values.v1);
            return J;
        }
        case Family::Cylindrical:
            J.J1 = std::abs(values.v1);
            J.J3 = std::abs(values.v2);
            J.J2 = std::max(0.0, std::sqrt(H2) - J.J1 - J.J3);
            return J;
    }
    throw std::domain_error("action_triple: unknown family");
}

EllipsoidalVertices closed_form_vertices(const SystemSpec& spec) {
    spec.validate();
    if (spec.family != Family::Ellipsoidal)
        throw std::invalid_argument(
            "closed_form_vertices: requires the ellipsoidal family");
    const double e1 = spec.e[0], e2 = spec.e[1], e3 = spec.e[2], e4 = spec.e[3];
    const double H2 = spec.two_h;
    const double scale = std::sqrt(H2);

    EllipsoidalVertices out;
    out.A21 = ActionTriple{double_root_action(H2, e2, e1, e2, e3, e4), 0.0,
                           double_root_action(H2, e2, e3, e4, e1, e2)};
    out.A22 = ActionTriple{double_root_action(H2, e3, e1, e2, e3, e4), 0.0,
                           double_root_action(H2, e3, e3, e4, e1, e2)};

    const double u1 = std::sqrt((e2 - e1) / (e3 - e1));
    out.A31 = ActionTriple{scale * kTwoOverPi * std::asin(u1),
                           scale * kTwoOverPi * std::acos(u1), 0.0};
    const double u2 = std::sqrt((e3 - e2) / (e4 - e2));
    out.A12 = ActionTriple{0.0, scale * kTwoOverPi * std::asin(u2),
                           scale * kTwoOverPi * std::acos(u2)};

    const double v1 = std::sqrt((e2 - e1) / (e4 - e1));
    const double v2 = std::sqrt((e3 - e1) / (e4 - e1));
    out.HH = ActionTriple{scale * kTwoOverPi * std::asin(v1),
                          scale * kTwoOverPi * (std::asin(v2) - std::asin(v1)),
                          scale * kTwoOverPi * std::acos(v2)};
    return out;
}

std::function<Vec2(double)> circle_loop(const Vec2& center, double radius) {
    return [center, radius](double t) {
        const double theta = 2.0 * M_PI * t;
        return Vec2(center[0] + radius * std::cos(theta),
                    center[1] + radius * std::sin(theta));
    };
}

MonodromyResult monodromy(const SystemSpec& spec,
                          const std::function<Vec2(double)>& loop, int steps) {
    spec.validate();
    if (spec.family != Family::Prolate)
        throw std::invalid_argument("monodromy: requires the prolate family");
    const double H2 = spec.two_h;
    const double margin = 1e-3;

    auto check = [&](const Vec2& v) {
        const double l = v[0], g = v[1];
        if (g < margin || spec.b * (H2 - l * l) - g < margin ||
            std::hypot(l, g - H2) < margin)
            throw std::domain_error(
                "monodromy: loop approaches the bifurcation set");
    };
    auto j1 = [&](const Vec2& v) {
        return action_triple(IntegralValues{v[0], v[1]}, spec, 1e-12).J1;
    };
    auto grad = [&](const Vec2& v) {
        const double h = 1e-5;
        return Vec2((j1(Vec2(v[0] + h, v[1])) - j1(Vec2(v[0] - h, v[1]))) / (2.0 * h),
                    (j1(Vec2(v[0], v[1] + h)) - j1(Vec2(v[0], v[1] - h))) / (2.0 * h));
    };

    const Vec2 start = loop(0.0);
    check(start);
    const Vec2 w0 = grad(start);
    Vec2 w = w0;
    // Transport w along the loop: at each step pick the lattice
    // representative s*w_raw + n*(1, 0) nearest to the previous vector.
    for (int k = 1; k <= steps; ++k) {
        const Vec2 v = loop(static_cast<double>(k) / steps);
        check(v);
        const Vec2 raw = grad(v);
        Vec2 best = raw;
        double best_d = std::numeric_limits<double>::infinity();
        for (const double s : {1.0, -1.0}) {
            const double n = std::round(w[0] - s * raw[0]);
            const Vec2 cand(s * raw[0] + n, s * raw[1]);
            const double d = (cand - w).norm();
            if (d < best_d) {
                best_d = d;
                best = cand;
            }
        }
        w = best;
    }

    MonodromyResult out;
    const double nu = std::round(w[0] - w0[0]);
    out.residual = std::max(std::abs(w[0] - w0[0] - nu), std::abs(w[1] - w0[1]));
    out.matrix = Eigen::Matrix3i::Identity();
    out.matrix(0, 1) = -static_cast<int>(nu);
    out.matrix(2, 1) = static_cast<int>(nu);
    return out;
}

std::array<int, 2> derivative_jump(const SystemSpec& spec, double g) {
    spec.validate();
    if (spec.family != Family::Prolate)
        throw std::invalid_argument("derivative_jump: requires the prolate family");
    const double delta = 1e-4, h = 1e-5;
    auto acts = [&](double l) { return action_triple(IntegralValues{l, g}, spec, 1e-12); };
    auto slope = [&](double l, bool first) {
        const ActionTriple p = acts(l + h), m = acts(l - h);
        return first ? (p.J1 - m.J1) / (2.0 * h) : (p.J3 - m.J3) / (2.0 * h);
    };
    const double jump1 = slope(delta, true) - slope(-delta, true);
    const double jump3 = slope(delta, false) - slope(-delta, false);
    return {static_cast<int>(std::lround(-0.5 * jump1)),
            static_cast<int>(std::lround(-0.5 * jump3))};
}

SemitoricPolygon semitoric_polygon(const SystemSpec& spec) {
    spec.validate();
    if (spec.family != Family::Prolate)
        throw std::invalid_argument("semitoric_polygon: requires the prolate family");
    const double r = std::sqrt(spec.two_h);
    SemitoricPolygon out;
    out.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0), Vec2(0.0, r)};
    out.fake_corner = Vec2(0.0, r);
    const double u = std::sqrt(1.0 / spec.b);
    out.height = r * kTwoOverPi * std::acos(u);
    out.focus_focus = Vec2(0.0, r * kTwoOverPi * std::asin(u));
    return out;
}

std::vector<ActionArc> interior_arcs(const SystemSpec& spec) {
    spec.validate();
    const double H2 = spec.two_h;
    const double scale = std::sqrt(H2);
    std::vector<ActionArc> out;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            const EllipsoidalVertices v = closed_form_vertices(spec);
            // gamma1: image of the line through e2 from its tangency with
            // the parabola to the vertex d24; gamma2 likewise through e3.
            ActionArc g1;
            g1.name = "gamma1";
            g1.t0 = 2.0 * H2 * e[1];
            g1.t1 = H2 * (e[1] + e[3]);
            g1.at = [spec, e, H2](double t) {
                return action_triple(
                    IntegralValues{t, e[1] * t - H2 * e[1] * e[1]}, spec);
            };
            g1.start = v.A21;
            g1.end = v.A31;
            out.push_back(std::move(g1));
            ActionArc g2;
            g2.name = "gamma2";
            g2.t0 = H2 * (e[0] + e[2]);
            g2.t1 = 2.0 * H2 * e[2];
            g2.at = [spec, e, H2](double t) {
                return action_triple(
                    IntegralValues{t, e[2] * t - H2 * e[2] * e[2]}, spec);
            };
            g2.start = v.A12;
            g2.end = v.A22;
            out.push_back(std::move(g2));
            return out;
        }
        case Family::Oblate: {
            const double a = spec.a;
            ActionArc arc;
            arc.name = "gamma_obl";
            arc.t0 = 0.0;
            arc.t1 = scale * std::sqrt((a - 1.0) / a);
            arc.at = [spec, H2](double l) {
                return action_triple(IntegralValues{l, H2 - l * l}, spec);
            };
            arc.start =
                ActionTriple{scale * kTwoOverPi * std::asin(1.0 / std::sqrt(a)),
                             scale * kTwoOverPi * std::acos(1.0 / std::sqrt(a)), 0.0};
            arc.end = ActionTriple{scale * (1.0 - std::sqrt((a - 1.0) / a)), 0.0,
                                   scale * std::sqrt((a - 1.0) / a)};
            out.push_back(std::move(arc));
            return out;
        }
        case Family::Lame: {
            const auto& f = spec.f;
            ActionArc arc;
            arc.name = "middle_line";
            arc.t0 = 0.0;
            arc.t1 = H2;
            arc.at = [spec, f, H2](double F) {
                return action_triple(IntegralValues{F, f[1] * (H2 - F)}, spec);
            };
            const double delta = std::sqrt((f[1] - f[0]) / (f[2] - f[0]));
            arc.start = ActionTriple{0.0, scale * kTwoOverPi * std::asin(delta),
                                     scale * kTwoOverPi * std::acos(delta)};
            arc.end = ActionTriple{scale, 0.0, 0.0};
            out.push_back(std::move(arc));
            return out;
        }
        default:
            return out;
    }
}

}  // namespace staeckel
