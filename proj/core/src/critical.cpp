#include "staeckel/critical.hpp"

#include "staeckel/separation.hpp"
#include "staeckel/so4.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr double kOnCurveTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

/// Arc consisting of a single point.
CriticalArc point_arc(const Vec6& v, std::string desc) {
    CriticalArc arc;
    arc.description = std::move(desc);
    arc.t0 = arc.t1 = 0.0;
    arc.at = [v](double) { return Bivector::of(v); };
    return arc;
}

/// Circle of radius r in components (i, j) around a fixed base point.
CriticalArc circle_arc(const Vec6& base, int i, int j, double r, std::string desc) {
    CriticalArc arc;
    arc.description = std::move(desc);
    arc.t0 = 0.0;
    arc.t1 = 2.0 * M_PI;
    arc.at = [base, i, j, r](double theta) {
        Vec6 v = base;
        v[i] = r * std::cos(theta);
        v[j] = r * std::sin(theta);
        return Bivector::of(v);
    };
    return arc;
}

/** Critical segment with squares (u1, u2, u3) >= 0 placed in components
    comps, solving u1+u2+u3 = S and c.u = m; all other components zero.
    The feasible set is a segment of a line in the simplex. */
CriticalArc simplex_line_arc(const std::array<int, 3>& comps, const Vec3& c,
                             double S, double m, std::string desc) {
    Eigen::Matrix<double, 2, 3> A;
    A << 1, 1, 1, c[0], c[1], c[2];
    const Vec2 rhs(S, m);
    const Vec3 u0 = A.transpose() * (A * A.transpose()).ldlt().solve(rhs);
    const Vec3 d(c[1] - c[2], c[2] - c[0], c[0] - c[1]);

    double tlo = -kInf, thi = kInf;
    for (int j = 0; j < 3; ++j) {
        if (std::abs(d[j]) > 1e-14 * (1.0 + c.cwiseAbs().maxCoeff())) {
            const double bound = -u0[j] / d[j];
            if (d[j] > 0)
                tlo = std::max(tlo, bound);
            else
                thi = std::min(thi, bound);
        }
    }
    if (!(tlo <= thi)) {
        // Vertex value: the segment collapses to a point.
        const double mid = 0.5 * (tlo + thi);
        tlo = thi = mid;
    }
    CriticalArc arc;
    arc.description = std::move(desc);
    arc.t0 = tlo;
    arc.t1 = thi;
    arc.at = [comps, u0, d](double t) {
        Vec6 v = Vec6::Zero();
        for (int j = 0; j < 3; ++j)
            v[comps[j]] = std::sqrt(std::max(0.0, u0[j] + t * d[j]));
        return Bivector::of(v);
    };
    return arc;
}

/// Indices of the three bivector components whose pair excludes i, and
/// the companion parameter index r (the complement element != i).
void complement_triple(int i, std::array<int, 3>& comps, std::array<int, 3>& rs) {
    int n = 0;
    for (int k = 0; k < 6; ++k) {
        const auto [p, q] = kPairIndex[k];
        if (p == i || q == i) continue;
        const auto [cm, cn] = kComplementIndex[k];
        comps[n] = k;
        rs[n] = (cm == i) ? cn : cm;
        ++n;
    }
}

// ---------------------------------------------------------------------------
// Curve inventory per family.  Curve ids index the list in the order
// returned by bifurcation_set.

/// Signed residual distance of a value from curve id (kInf if the value
/// projects outside the curve's parameter range).
double curve_residual(const SystemSpec& spec, int id, const IntegralValues& val) {
    const double H2 = spec.two_h;
    const double v1 = val.v1, v2 = val.v2;
    const double slack = 1e-6 * std::max({1.0, std::abs(v1), std::abs(v2)});
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            if (id < 4) {
                static const int lo[4] = {1, 0, 0, 0};
                static const int hi[4] = {3, 3, 3, 2};
                // L_i spans eta1 in [2h(e_i+e_lo), 2h(e_i+e_hi)] with the
                // partner index excluding i itself.
                double a = 0, b = 0;
                switch (id) {
                    case 0: a = H2 * (e[0] + e[1]); b = H2 * (e[0] + e[3]); break;
                    case 1: a = H2 * (e[0] + e[1]); b = H2 * (e[1] + e[3]); break;
                    case 2: a = H2 * (e[0] + e[2]); b = H2 * (e[2] + e[3]); break;
                    case 3: a = H2 * (e[0] + e[3]); b = H2 * (e[2] + e[3]); break;
                }
                (void)lo;
                (void)hi;
                if (v1 < a - slack || v1 > b + slack) return kInf;
                return std::abs(v2 - e[id] * v1 + H2 * sq(e[id])) /
                       std::sqrt(1.0 + sq(e[id]));
            }
            // Parabola (2*2h*t, 2h*t^2), t in [e2, e3].
            if (v1 < 2.0 * H2 * e[1] - slack || v1 > 2.0 * H2 * e[2] + slack)
                return kInf;
            return std::abs(v2 - sq(v1) / (4.0 * H2)) /
                   std::sqrt(1.0 + sq(v1 / (2.0 * H2)));
        }
        case Family::Prolate: {
            const double l = v1, g = v2, b = spec.b;
            if (id == 2) return std::hypot(l, g - H2);
            if (std::abs(l) > std::sqrt(H2) + slack) return kInf;
            if (id == 0)
                return std::abs(g - b * (H2 - l * l)) / std::sqrt(1.0 + sq(2.0 * b * l));
            return std::abs(g);
        }
        case Family::Oblate: {
            const double l = v1, g = v2, a = spec.a;
            if (std::abs(l) > std::sqrt(H2) + slack) return kInf;
            if (id == 0) {
                // The outer boundary exists only between its tangencies with
                // the middle parabola; beyond them the boundary is O2.
                if (std::abs(l) > std::sqrt(H2 * (a - 1.0) / a) + slack) return kInf;
                const double rim = std::sqrt(a) - std::sqrt(a - 1.0) * std::abs(l) / std::sqrt(H2);
                return std::abs(g - H2 * sq(std::max(rim, 0.0)));
            }
            if (id == 1) return std::abs(g - (H2 - l * l));
            return std::abs(g);
        }
        case Family::Lame: {
            const double F = v1, G = v2;
            if (id == 4) return std::hypot(F - H2, G);
            if (id == 3) {
                if (G < H2 * spec.f[0] - slack || G > H2 * spec.f[2] + slack)
                    return kInf;
                return std::abs(F);
            }
            if (F < -slack || F > H2 + slack) return kInf;
            const double fj = spec.f[id];
            return std::abs(G - fj * (H2 - F)) / std::sqrt(1.0 + sq(fj));
        }
        case Family::Spherical23: {
            const double l = v1, g = v2;
            if (id == 2) return std::hypot(l, g - H2);
            if (std::abs(l) > std::sqrt(H2) + slack) return kInf;
            if (id == 0) return std::abs(g - (H2 - l * l));
            return std::abs(g);
        }
        case Family::Cylindrical:
            return std::abs(std::abs(v1) + std::abs(v2) - std::sqrt(H2));
    }
    return kInf;
}

int curve_count(const SystemSpec& spec) {
    switch (spec.family) {
        case Family::Ellipsoidal: return 5;
        case Family::Prolate: return 3;
        case Family::Oblate: return 3;
        case Family::Lame: return 5;
        case Family::Spherical23: return 3;
        case Family::Cylindrical: return 4;
    }
    return 0;
}

/// Critical-point arcs over a value assumed to lie on curve id.
std::vector<CriticalArc> arcs_for(const SystemSpec& spec, int id,
                                  const IntegralValues& val) {
    const double H2 = spec.two_h;
    const double v1 = val.v1, v2 = val.v2;
    std::vector<CriticalArc> arcs;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            if (id < 4) {
                std::array<int, 3> comps{}, rs{};
                complement_triple(id, comps, rs);
                const Vec3 c(e[rs[0]], e[rs[1]], e[rs[2]]);
                std::ostringstream os;
                os << "segment on L" << (id + 1)
                   << " (squares of momenta complementary to index " << (id + 1) << ")";
                arcs.push_back(
                    simplex_line_arc(comps, c, H2, v1 - H2 * e[id], os.str()));
                return arcs;
            }
            // Parabola: the two circles of the double-root configuration.
            const double lam =
                std::min(std::max(v1 / (2.0 * H2), e[1]), e[2]);
            const double alpha = (e[2] - e[1]) * (e[3] - e[0]);
            const double beta = (e[2] - e[0]) * (e[3] - e[1]);
            const double r1 = std::sqrt(std::max(0.0, lam - e[0]));
            const double r2 = std::sqrt(std::max(0.0, lam - e[1]));
            const double r3 = std::sqrt(std::max(0.0, e[2] - lam));
            const double r4 = std::sqrt(std::max(0.0, e[3] - lam));
            for (const double sgn : {1.0, -1.0}) {
                CriticalArc arc;
                arc.description =
                    sgn > 0 ? "double-root circle (upper sign)"
                            : "double-root circle (lower sign)";
                arc.t0 = 0.0;
                arc.t1 = 2.0 * M_PI;
                arc.at = [=](double theta) {
                    const double b2 = std::sqrt(2.0 * H2 / alpha) * std::cos(theta);
                    const double b3 = std::sqrt(2.0 * H2 / beta) * std::sin(theta);
                    const double a1 = std::hypot(b2, b3);
                    Vec6 v;
                    const double inv = 1.0 / std::sqrt(2.0);
                    v[0] = a1 * r1 * r2 * inv;
                    v[1] = -sgn * b2 * r1 * r3 * inv;
                    v[2] = -b3 * r1 * r4 * inv;
                    v[3] = -sgn * b3 * r2 * r3 * inv;
                    v[4] = b2 * r2 * r4 * inv;
                    v[5] = -sgn * a1 * r3 * r4 * inv;
                    return Bivector::of(v);
                };
                arcs.push_back(std::move(arc));
            }
            return arcs;
        }
        case Family::Prolate: {
            const double l = v1;
            if (id == 2) {
                for (const double s : {1.0, -1.0}) {
                    Vec6 v = Vec6::Zero();
                    v[2] = s * std::sqrt(H2);
                    arcs.push_back(point_arc(v, "focus-focus point l14"));
                }
                return arcs;
            }
            const double rho = std::sqrt(std::max(0.0, H2 - l * l));
            Vec6 base = Vec6::Zero();
            base[3] = l;
            if (id == 0)
                arcs.push_back(circle_arc(base, 0, 1, rho, "boundary circle (l12, l13)"));
            else
                arcs.push_back(circle_arc(base, 4, 5, rho, "zero-level circle (l24, l34)"));
            return arcs;
        }
        case Family::Oblate: {
            const double l = v1, a = spec.a;
            const double rho = std::sqrt(std::max(0.0, H2 - l * l));
            Vec6 base = Vec6::Zero();
            base[5] = l;
            if (id == 1) {
                arcs.push_back(circle_arc(base, 1, 2, rho, "middle circle (l13, l14)"));
                return arcs;
            }
            if (id == 2) {
                arcs.push_back(circle_arc(base, 3, 4, rho, "zero-level circle (l23, l24)"));
                return arcs;
            }
            // Outer boundary: the G-maximizing circle at fixed l34, built in
            // the so(3) x so(3) split on the unit leaf and rescaled.
            const double root = std::sqrt(H2);
            const double lh = l / root;
            const double m = std::abs(lh);
            const double k = std::sqrt(a * (a - 1.0));
            const double s2 = std::max(0.0, 1.0 + m * m - (2.0 * a - 1.0) * m / k);
            for (const double ssgn : {1.0, -1.0}) {
                const double s = ssgn * std::sqrt(s2);
                const double u = 0.5 * (s + lh);
                const double v = 0.5 * (s - lh);
                const double rx = std::sqrt(std::max(0.0, 0.25 - u * u));
                const double ry = std::sqrt(std::max(0.0, 0.25 - v * v));
                CriticalArc arc;
                arc.description = "outer boundary circle (split construction)";
                arc.t0 = 0.0;
                arc.t1 = 2.0 * M_PI;
                arc.at = [=](double phi) {
                    XYPair p;
                    p.X << u, rx * std::cos(phi), rx * std::sin(phi);
                    p.Y << v, -ry * std::cos(phi), ry * std::sin(phi);
                    return Bivector::of(root * join(p).vec());
                };
                arcs.push_back(std::move(arc));
            }
            return arcs;
        }
        case Family::Lame: {
            const double F = std::max(0.0, v1), G = v2;
            const auto& f = spec.f;
            if (id == 4) {
                // Spherical-type fibre: coordinate circles of the 2-sphere
                // l12^2 + l13^2 + l14^2 = 2h.
                const double r = std::sqrt(H2);
                const Vec6 z = Vec6::Zero();
                arcs.push_back(circle_arc(z, 0, 1, r, "sphere circle (l12, l13)"));
                arcs.push_back(circle_arc(z, 0, 2, r, "sphere circle (l12, l14)"));
                arcs.push_back(circle_arc(z, 1, 2, r, "sphere circle (l13, l14)"));
                return arcs;
            }
            if (id == 3) {
                arcs.push_back(simplex_line_arc(
                    {3, 4, 5}, Vec3(f[2], f[1], f[0]), H2, G,
                    "segment on the F = 0 line (squares of l23, l24, l34)"));
                return arcs;
            }
            const double r = std::sqrt(F);
            // Circle plane and the pinned companion component per line.
            const int ci[3][2] = {{1, 2}, {0, 2}, {0, 1}};
            const int pin[3] = {5, 4, 3};
            const double fj = f[id];
            const double pinsq = fj > 0 ? G / fj : H2 - F;
            for (const double s : {1.0, -1.0}) {
                Vec6 base = Vec6::Zero();
                base[pin[id]] = s * std::sqrt(std::max(0.0, pinsq));
                std::ostringstream os;
                os << "rank-1 circle on line " << (id + 1);
                arcs.push_back(circle_arc(base, ci[id][0], ci[id][1], r, os.str()));
            }
            return arcs;
        }
        case Family::Spherical23: {
            const double l = v1;
            if (id == 2) {
                const double r = std::sqrt(H2);
                const Vec6 z = Vec6::Zero();
                arcs.push_back(circle_arc(z, 0, 1, r, "sphere circle (l12, l13)"));
                arcs.push_back(circle_arc(z, 0, 2, r, "sphere circle (l12, l14)"));
                arcs.push_back(circle_arc(z, 1, 2, r, "sphere circle (l13, l14)"));
                return arcs;
            }
            const double rho = std::sqrt(std::max(0.0, H2 - l * l));
            Vec6 base = Vec6::Zero();
            base[5] = l;
            if (id == 0)
                arcs.push_back(circle_arc(base, 1, 2, rho, "upper circle (l13, l14)"));
            else
                arcs.push_back(circle_arc(base, 3, 4, rho, "zero-level circle (l23, l24)"));
            return arcs;
        }
        case Family::Cylindrical: {
            (void)id;
            const double half = 0.5 * std::sqrt(H2);
            const double x1 = 0.5 * (v1 + v2);
            const double y1 = 0.5 * (v1 - v2);
            const double tol = 1e-7 * std::max(1.0, std::sqrt(H2));
            if (std::abs(std::abs(x1) - half) < tol) {
                const double r = std::sqrt(std::max(0.0, half * half - y1 * y1));
                CriticalArc arc;
                arc.description = "X-pole circle (Y free at fixed Y1)";
                arc.t0 = 0.0;
                arc.t1 = 2.0 * M_PI;
                arc.at = [=](double phi) {
                    XYPair p;
                    p.X << x1, 0.0, 0.0;
                    p.Y << y1, r * std::cos(phi), r * std::sin(phi);
                    return join(p);
                };
                arcs.push_back(std::move(arc));
            }
            if (std::abs(std::abs(y1) - half) < tol) {
                const double r = std::sqrt(std::max(0.0, half * half - x1 * x1));
                CriticalArc arc;
                arc.description = "Y-pole circle (X free at fixed X1)";
                arc.t0 = 0.0;
                arc.t1 = 2.0 * M_PI;
                arc.at = [=](double phi) {
                    XYPair p;
                    p.X << x1, r * std::cos(phi), r * std::sin(phi);
                    p.Y << y1, 0.0, 0.0;
                    return join(p);
                };
                arcs.push_back(std::move(arc));
            }
            return arcs;
        }
    }
    return arcs;
}

Rank1Type rank1_type_of(SingularityType t) {
    switch (t) {
        case SingularityType::Rank1Elliptic: return Rank1Type::Elliptic;
        case SingularityType::Rank1Hyperbolic: return Rank1Type::Hyperbolic;
        default: return Rank1Type::Degenerate;
    }
}

/// Rank-1 segmentation of a curve by classifying constructed critical
/// points at sampled interior parameters.
std::vector<CurveSegment> segment_curve(const SystemSpec& spec, int id,
                                        const BifurcationCurve& curve) {
    std::vector<CurveSegment> segments;
    if (curve.t1 <= curve.t0) return segments;
    constexpr int kSamples = 9;
    const double dt = (curve.t1 - curve.t0) / kSamples;
    for (int i = 0; i < kSamples; ++i) {
        const double t = curve.t0 + (i + 0.5) * dt;
        const Vec2 p = curve.at(t);
        Rank1Type type = Rank1Type::Degenerate;
        const auto arcs = arcs_for(spec, id, IntegralValues{p[0], p[1]});
        if (!arcs.empty()) {
            const auto& a = arcs.front();
            const Bivector L = a.at(0.5 * (a.t0 + a.t1) + 0.25);
            type = rank1_type_of(classify(L, spec));
        }
        if (!segments.empty() && segments.back().type == type)
            segments.back().t1 = curve.t0 + (i + 1) * dt;
        else
            segments.push_back(
                CurveSegment{curve.t0 + i * dt, curve.t0 + (i + 1) * dt, type});
    }
    return segments;
}

BifurcationCurve make_line(std::string name, std::string color, double slope,
                           double intercept, double t0, double t1) {
    BifurcationCurve c;
    c.kind = CurveKind::Line;
    c.name = std::move(name);
    c.color = std::move(color);
    c.t0 = t0;
    c.t1 = t1;
    c.at = [slope, intercept](double t) { return Vec2(t, slope * t + intercept); };
    return c;
}

BifurcationCurve make_point_curve(std::string name, std::string color, const Vec2& p) {
    BifurcationCurve c;
    c.kind = CurveKind::ParametricArc;
    c.name = std::move(name);
    c.color = std::move(color);
    c.t0 = c.t1 = 0.0;
    c.at = [p](double) { return p; };
    c.vertices = {p};
    return c;
}

}  // namespace

std::string singularity_name(SingularityType type) {
    switch (type) {
        case SingularityType::Regular: return "regular";
        case SingularityType::EllipticElliptic: return "elliptic-elliptic";
        case SingularityType::EllipticHyperbolic: return "elliptic-hyperbolic";
        case SingularityType::HyperbolicHyperbolic: return "hyperbolic-hyperbolic";
        case SingularityType::FocusFocus: return "focus-focus";
        case SingularityType::Rank1Elliptic: return "rank1-elliptic";
        case SingularityType::Rank1Hyperbolic: return "rank1-hyperbolic";
        case SingularityType::SphericalType: return "spherical-type";
        case SingularityType::Degenerate: return "degenerate";
    }
    return "unknown";
}

std::vector<BifurcationCurve> bifurcation_set(const SystemSpec& spec) {
    spec.validate();
    const double H2 = spec.two_h;
    std::vector<BifurcationCurve> out;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            auto dij = [&](int i, int j) {
                return Vec2(H2 * (e[i] + e[j]), H2 * e[i] * e[j]);
            };
            auto tangency = [&](int i) { return Vec2(2.0 * H2 * e[i], H2 * sq(e[i])); };
            static const char* colors[4] = {"blue", "green", "orange", "red"};
            // L_i: eta2 = e_i eta1 - 2h e_i^2, parametrized by eta1.
            struct Range { int lo, hi; };
            const Range ranges[4] = {{1, 3}, {0, 3}, {0, 3}, {0, 2}};
            for (int i = 0; i < 4; ++i) {
                double a = 0, b = 0;
                std::vector<Vec2> verts;
                for (int j = 0; j < 4; ++j) {
                    if (j == i) continue;
                    verts.push_back(dij(std::min(i, j), std::max(i, j)));
                }
                a = verts.front()[0];
                b = verts.back()[0];
                BifurcationCurve c = make_line(
                    "L" + std::to_string(i + 1), colors[i], e[i], -H2 * sq(e[i]), a, b);
                c.vertices = verts;
                if (i == 1) c.vertices.push_back(tangency(1));
                if (i == 2) c.vertices.push_back(tangency(2));
                out.push_back(std::move(c));
            }
            (void)ranges;
            BifurcationCurve par;
            par.kind = CurveKind::Parabola;
            par.name = "C";
            par.color = "cyan";
            par.t0 = e[1];
            par.t1 = e[2];
            par.at = [H2](double t) { return Vec2(2.0 * H2 * t, H2 * t * t); };
            par.vertices = {tangency(1), tangency(2)};
            out.push_back(std::move(par));
            break;
        }
        case Family::Prolate: {
            const double b = spec.b;
            const double r = std::sqrt(H2);
            BifurcationCurve p1;
            p1.kind = CurveKind::Parabola;
            p1.name = "P1";
            p1.color = "blue";
            p1.t0 = -r;
            p1.t1 = r;
            p1.at = [b, H2](double l) { return Vec2(l, b * (H2 - l * l)); };
            p1.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0)};
            out.push_back(std::move(p1));
            BifurcationCurve p2 = make_line("P2", "green", 0.0, 0.0, -r, r);
            p2.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0)};
            out.push_back(std::move(p2));
            out.push_back(make_point_curve("FF", "magenta", Vec2(0.0, H2)));
            break;
        }
        case Family::Oblate: {
            const double a = spec.a;
            const double r = std::sqrt(H2);
            const double lt0 = std::sqrt(H2 * (a - 1.0) / a);
            BifurcationCurve o1;
            o1.kind = CurveKind::ParametricArc;
            o1.name = "O1";
            o1.color = "blue";
            o1.t0 = -lt0;
            o1.t1 = lt0;
            o1.at = [a, H2](double l) {
                const double rim =
                    std::sqrt(a) - std::sqrt(a - 1.0) * std::abs(l) / std::sqrt(H2);
                return Vec2(l, H2 * sq(std::max(rim, 0.0)));
            };
            const double lt = std::sqrt(H2 * (a - 1.0) / a);
            o1.vertices = {Vec2(-lt, H2 / a), Vec2(lt, H2 / a)};
            out.push_back(std::move(o1));
            BifurcationCurve o2;
            o2.kind = CurveKind::Parabola;
            o2.name = "O2";
            o2.color = "red";
            o2.t0 = -r;
            o2.t1 = r;
            o2.at = [H2](double l) { return Vec2(l, H2 - l * l); };
            o2.vertices = {Vec2(-lt, H2 / a), Vec2(lt, H2 / a)};
            out.push_back(std::move(o2));
            BifurcationCurve o3 = make_line("O3", "green", 0.0, 0.0, -r, r);
            o3.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0)};
            out.push_back(std::move(o3));
            break;
        }
        case Family::Lame: {
            const auto& f = spec.f;
            static const char* colors[3] = {"blue", "green", "orange"};
            for (int j = 0; j < 3; ++j) {
                // F parametrized; G = f_j (2h - F).
                BifurcationCurve c = make_line("L" + std::to_string(j + 1), colors[j],
                                               -f[j], H2 * f[j], 0.0, H2);
                c.vertices = {Vec2(0.0, H2 * f[j]), Vec2(H2, 0.0)};
                out.push_back(std::move(c));
            }
            BifurcationCurve l4;
            l4.kind = CurveKind::Line;
            l4.name = "L4";
            l4.color = "red";
            l4.t0 = H2 * f[0];
            l4.t1 = H2 * f[2];
            l4.at = [](double g) { return Vec2(0.0, g); };
            l4.vertices = {Vec2(0.0, H2 * f[0]), Vec2(0.0, H2 * f[1]),
                           Vec2(0.0, H2 * f[2])};
            out.push_back(std::move(l4));
            out.push_back(make_point_curve("T123", "magenta", Vec2(H2, 0.0)));
            break;
        }
        case Family::Spherical23: {
            const double r = std::sqrt(H2);
            BifurcationCurve c1;
            c1.kind = CurveKind::Parabola;
            c1.name = "c1";
            c1.color = "blue";
            c1.t0 = -r;
            c1.t1 = r;
            c1.at = [H2](double l) { return Vec2(l, H2 - l * l); };
            c1.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0), Vec2(0.0, H2)};
            out.push_back(std::move(c1));
            BifurcationCurve c2 = make_line("c2", "green", 0.0, 0.0, -r, r);
            c2.vertices = {Vec2(-r, 0.0), Vec2(r, 0.0)};
            out.push_back(std::move(c2));
            out.push_back(make_point_curve("D23", "magenta", Vec2(0.0, H2)));
            break;
        }
        case Family::Cylindrical: {
            const double r = std::sqrt(H2);
            static const char* colors[4] = {"blue", "green", "orange", "red"};
            // Diamond |l12| + |l34| = sqrt(2h): four edges, parametrized by l12.
            const double s1[4] = {1.0, 1.0, -1.0, -1.0};   // sign of the l34 edge
            const double lo[4] = {0.0, -r, -r, 0.0};
            const double hi[4] = {r, 0.0, 0.0, r};
            for (int q = 0; q < 4; ++q) {
                BifurcationCurve c;
                c.kind = CurveKind::Line;
                c.name = "E" + std::to_string(q + 1);
                c.color = colors[q];
                c.t0 = lo[q];
                c.t1 = hi[q];
                const double sgn = s1[q];
                c.at = [sgn, r](double l12) {
                    return Vec2(l12, sgn * (r - std::abs(l12)));
                };
                c.vertices = {c.at(c.t0), c.at(c.t1)};
                out.push_back(std::move(c));
            }
            break;
        }
    }
    for (int id = 0; id < static_cast<int>(out.size()); ++id)
        out[id].segments = segment_curve(spec, id, out[id]);
    return out;
}

std::vector<CriticalArc> critical_points(const SystemSpec& spec,
                                         const IntegralValues& value) {
    spec.validate();
    double best = kInf;
    std::vector<CriticalArc> arcs;
    const double scale = std::max({1.0, std::abs(value.v1), std::abs(value.v2)});
    for (int id = 0; id < curve_count(spec); ++id) {
        const double res = curve_residual(spec, id, value);
        best = std::min(best, res);
        if (res <= kOnCurveTol * scale) {
            auto a = arcs_for(spec, id, value);
            arcs.insert(arcs.end(), std::make_move_iterator(a.begin()),
                        std::make_move_iterator(a.end()));
        }
    }
    if (arcs.empty()) {
        std::ostringstream os;
        os << "critical_points: value (" << value.v1 << ", " << value.v2
           << ") is off the bifurcation set (distance " << best << ")";
        throw std::domain_error(os.str());
    }
    return arcs;
}

SingularityType classify(const Bivector& Lb, const SystemSpec& spec) {
    spec.validate();
    const Vec6 L = Lb.vec();
    const auto [f, g] = build_integrals(spec);

    // Orthonormal basis N of the leaf tangent space (complement of the
    // Casimir gradients).
    Eigen::Matrix<double, 6, 2> cas;
    cas.col(0) = 2.0 * L;
    cas.col(1) = casimir2_gradient(L);
    const Eigen::HouseholderQR<Eigen::Matrix<double, 6, 2>> qr(cas);
    const Mat6 Qfull = qr.householderQ();
    const Eigen::Matrix<double, 6, 4> N = Qfull.rightCols<4>();

    const Vec6 gf = f.gradient(L);
    const Vec6 gg = g.gradient(L);
    const double gscale = std::max({1.0, gf.norm(), gg.norm()});
    Eigen::Matrix<double, 4, 2> M;
    M.col(0) = N.transpose() * gf;
    M.col(1) = N.transpose() * gg;
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(M, Eigen::ComputeFullV);
    const double rank_tol = 1e-8 * gscale;
    int rank = 0;
    for (int i = 0; i < 2; ++i)
        if (svd.singularValues()[i] > rank_tol) ++rank;
    if (rank == 2) return SingularityType::Regular;

    // Eigenvalues of the leaf-restricted linearized flow of cf*f + cg*g.
    auto restricted = [&](double cf, double cg, Eigen::Vector4cd& ev) {
        const QuadraticObservable comb = QuadraticObservable::of(
            cf * f.Q() + cg * g.Q(), cf * f.linear_part() + cg * g.linear_part());
        const Mat4 A = N.transpose() * flow_jacobian(comb, L) * N;
        const Eigen::EigenSolver<Mat4> es(A, false);
        ev = es.eigenvalues();
        return 1e-5 * std::max(1.0, A.norm());
    };

    auto count = [](const Eigen::Vector4cd& ev, double zt, int& zero, int& imag,
                    int& real, int& cplx) {
        zero = imag = real = cplx = 0;
        for (int i = 0; i < 4; ++i) {
            const double re = std::abs(ev[i].real()), im = std::abs(ev[i].imag());
            if (re < zt && im < zt)
                ++zero;
            else if (re < zt)
                ++imag;
            else if (im < zt)
                ++real;
            else
                ++cplx;
        }
    };

    if (rank == 0) {
        Eigen::Vector4cd ev;
        int zero, imag, real, cplx;
        // If one generator alone has an identically vanishing linearized
        // flow, the critical fibre carries a sphere factor: the combined
        // spectrum degenerates to a single rotation frequency.
        for (const auto& pure : {Vec2(1.0, 0.0), Vec2(0.0, 1.0)}) {
            const double zt = restricted(pure[0], pure[1], ev);
            count(ev, zt, zero, imag, real, cplx);
            if (zero == 4) return SingularityType::SphericalType;
        }
        const double zt = restricted(0.37, 0.93, ev);
        count(ev, zt, zero, imag, real, cplx);
        if (zero == 4) return SingularityType::SphericalType;
        if (cplx == 4) return SingularityType::FocusFocus;
        if (imag == 4) return SingularityType::EllipticElliptic;
        if (real == 4) return SingularityType::HyperbolicHyperbolic;
        if (imag == 2 && real == 2) return SingularityType::EllipticHyperbolic;
        return SingularityType::Degenerate;
    }

    // Rank 1: restrict the flow of the null combination of (f, g).
    const Vec2 c = svd.matrixV().col(1);
    Eigen::Vector4cd ev;
    const double zt = restricted(c[0], c[1], ev);
    int zero, imag, real, cplx;
    count(ev, zt, zero, imag, real, cplx);
    if (zero == 4) {
        const bool one_trivial =
            M.col(0).norm() < rank_tol || M.col(1).norm() < rank_tol;
        return one_trivial ? SingularityType::SphericalType
                           : SingularityType::Degenerate;
    }
    std::complex<double> lead = ev[0];
    for (int i = 1; i < 4; ++i)
        if (std::abs(ev[i]) > std::abs(lead)) lead = ev[i];
    return std::abs(lead.real()) > std::abs(lead.imag())
               ? SingularityType::Rank1Hyperbolic
               : SingularityType::Rank1Elliptic;
}

ChamberResult chamber(const IntegralValues& value, const SystemSpec& spec) {
    const TurningRoots tr = turning_roots(value, spec);
    ChamberResult out;
    if (tr.status == ImageStatus::NotInImage) {
        out.outside = true;
        return out;
    }
    if (spec.family != Family::Ellipsoidal) {
        out.code = {1, 1};
        out.multiplicity = 1;
        return out;
    }
    const auto& e = spec.e;
    const double tol = 1e-12 * (1.0 + std::abs(e[0]) + std::abs(e[3]));
    // The middle branch must have an accessible oscillation interval.
    if (tr.r2 < e[1] - tol || tr.r1 > e[2] + tol) {
        out.outside = true;
        return out;
    }
    auto idx = [&](double r) {
        if (r <= e[1]) return 1;
        if (r <= e[2]) return 2;
        return 3;
    };
    out.code = {idx(tr.r1), idx(tr.r2)};
    out.multiplicity = (out.code[0] == 2 && out.code[1] == 2) ? 4 : 2;
    return out;
}

Vec4 uhlenbeck(const Bivector& L, const SystemSpec& spec) {
    spec.validate();
    const Vec6 v = L.vec();
    const double H2 = spec.two_h;
    switch (spec.family) {
        case Family::Ellipsoidal: {
            // msq(i, j) = l_ij^2 from the component order.
            Mat4 msq = Mat4::Zero();
            for (int k = 0; k < 6; ++k) {
                const auto [i, j] = kPairIndex[k];
                msq(i, j) = msq(j, i) = sq(v[k]);
            }
            Vec4 F = Vec4::Zero();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (j != i) F[i] += msq(i, j) / (spec.e[i] - spec.e[j]);
            return F;
        }
        case Family::Lame: {
            const auto& f = spec.f;
            const double l23 = v[3], l24 = v[4], l34 = v[5];
            const double FL = sq(v[0]) + sq(v[1]) + sq(v[2]);
            Vec4 F;
            F[0] = -FL;
            F[1] = sq(l23) / (f[0] - f[1]) + sq(l24) / (f[0] - f[2]);
            F[2] = sq(l23) / (f[1] - f[0]) + sq(l34) / (f[1] - f[2]);
            F[3] = sq(l24) / (f[2] - f[0]) + sq(l34) / (f[2] - f[1]);
            return F;
        }
        case Family::Prolate: {
            const double b = spec.b;
            const double G = b * (sq(v[0]) + sq(v[1])) + sq(v[2]);
            const double l23sq = sq(v[3]);
            return Vec4(-G / b, l23sq, -l23sq,
                        (H2 * b - G - b * l23sq) / ((b - 1.0) * b));
        }
        case Family::Oblate: {
            const double a = spec.a;
            const double G = a * sq(v[0]) + sq(v[1]) + sq(v[2]);
            const double l34sq = sq(v[5]);
            return Vec4(-G / a, (G + l34sq - H2) / (a - 1.0), l34sq, l34sq);
        }
        case Family::Spherical23:
        case Family::Cylindrical:
            throw std::domain_error(
                "uhlenbeck: not defined for the spherical and cylindrical limits");
    }
    throw std::domain_error("uhlenbeck: unknown family");
}

}  // namespace staeckel
