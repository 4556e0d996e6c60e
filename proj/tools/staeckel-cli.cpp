/** Command-line front end: bifurcation diagrams, action-map sweeps,
    monodromy, parameter-space reports, trajectory simulation, point
    classification, and an invariant verification suite.

    Exit codes: 0 success, 1 verification failure, 2 configuration error.
    File formats: CSV with a header row preceded by '#' metadata lines
    carrying the full configuration; flat key-value JSON with arrays for
    matrices; hand-emitted SVG with a fixed 800x800 viewBox. */

#include <staeckel/actions.hpp>
#include <staeckel/critical.hpp>
#include <staeckel/dynamics.hpp>
#include <staeckel/grassmann.hpp>
#include <staeckel/param_space.hpp>
#include <staeckel/separation.hpp>
#include <staeckel/so4.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace staeckel;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Configuration

struct RunConfig {
    std::string system = "ellipsoidal";
    std::string e = "1,2,5,8";
    double b = 2.4;
    double a = 2.4;
    std::string f = "0.4,1.3,3.2";
    double two_h = 1.0;
    unsigned seed = 0;
    int threads = 0;  ///< 0: STAECKEL_S3_THREADS env var, then hardware
    double tol = 1e-10;
    int grid = 20;
    int samples = 200;
    double T = 100.0;
    std::string center = "0,1";
    double radius = 0.3;
    int steps = 48;
    std::string point = "0.1,0.2,0.3,0.4,0.5,0.6";
    std::string csv;
    std::string svg;
    std::string out_json;
};

std::vector<double> parse_list(const std::string& s, size_t expected) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.size() != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) +
                                    " comma-separated values, got '" + s + "'");
    return out;
}

SystemSpec make_spec(const RunConfig& cfg) {
    if (cfg.system == "ellipsoidal") {
        const auto e = parse_list(cfg.e, 4);
        return SystemSpec::ellipsoidal(e[0], e[1], e[2], e[3], cfg.two_h);
    }
    if (cfg.system == "prolate") return SystemSpec::prolate(cfg.b, cfg.two_h);
    if (cfg.system == "oblate") return SystemSpec::oblate(cfg.a, cfg.two_h);
    if (cfg.system == "lame") {
        const auto f = parse_list(cfg.f, 3);
        return SystemSpec::lame(f[0], f[1], f[2], cfg.two_h);
    }
    if (cfg.system == "spherical") return SystemSpec::spherical23(cfg.two_h);
    if (cfg.system == "cylindrical") return SystemSpec::cylindrical(cfg.two_h);
    throw std::invalid_argument("unknown system '" + cfg.system + "'");
}

void validate_config(const RunConfig& cfg) {
    if (cfg.grid < 2) throw std::invalid_argument("--grid must be >= 2");
    if (cfg.samples < 2) throw std::invalid_argument("--samples must be >= 2");
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2))
        throw std::invalid_argument("--tol must lie in (0, 1e-2]");
    make_spec(cfg).validate();
}

/// Phase one of configuration: values from --config <path> are loaded
/// into the variable block, then the command line overrides them.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    in >> j;
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("system", cfg.system);
    get("e", cfg.e);
    get("b", cfg.b);
    get("a", cfg.a);
    get("f", cfg.f);
    get("two_h", cfg.two_h);
    get("seed", cfg.seed);
    get("threads", cfg.threads);
    get("tol", cfg.tol);
    get("grid", cfg.grid);
    get("samples", cfg.samples);
    get("T", cfg.T);
    get("center", cfg.center);
    get("radius", cfg.radius);
    get("steps", cfg.steps);
    get("point", cfg.point);
    get("csv", cfg.csv);
    get("svg", cfg.svg);
    get("json", cfg.out_json);
}

unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("STAECKEL_S3_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Order-stable parallel map over [0, n): results are assembled by index.
template <typename Fn>
void parallel_for(size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Emitters

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_metadata(std::ostream& os, const std::string& subcommand,
                    const RunConfig& cfg) {
    os << "# subcommand=" << subcommand << "\n"
       << "# system=" << cfg.system << " e=" << cfg.e << " b=" << num(cfg.b)
       << " a=" << num(cfg.a) << " f=" << cfg.f << " two_h=" << num(cfg.two_h)
       << "\n"
       << "# seed=" << cfg.seed << " tol=" << num(cfg.tol) << " grid=" << cfg.grid
       << " samples=" << cfg.samples << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

void write_json(const std::string& path, const json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        auto out = open_out(path);
        out << j.dump(2) << "\n";
    }
}

/// Affine map from a value-plane bounding box into the 800x800 viewBox.
struct PlaneMap {
    double x0 = 0, y0 = 0, sx = 1, sy = 1;

    static PlaneMap fit(double xlo, double xhi, double ylo, double yhi) {
        PlaneMap m;
        const double margin = 40.0;
        const double dx = std::max(xhi - xlo, 1e-12);
        const double dy = std::max(yhi - ylo, 1e-12);
        m.sx = (800.0 - 2.0 * margin) / dx;
        m.sy = (800.0 - 2.0 * margin) / dy;
        m.x0 = margin - xlo * m.sx;
        m.y0 = 800.0 - margin + ylo * m.sy;  // flip the y axis
        return m;
    }
    double px(double x) const { return x0 + sx * x; }
    double py(double y) const { return y0 - sy * y; }
};

void svg_header(std::ostream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\">\n"
       << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

// ---------------------------------------------------------------------------
// In-image value grids per family (used by `actions` and `verify`).

std::vector<IntegralValues> image_grid(const SystemSpec& spec, int n) {
    const double H2 = spec.two_h;
    const double m = 1e-3 * std::max(1.0, H2);
    std::vector<IntegralValues> pts;
    pts.reserve(static_cast<size_t>(n) * n);
    auto frac = [n](int k) { return (k + 0.5) / n; };
    switch (spec.family) {
        case Family::Ellipsoidal: {
            const auto& e = spec.e;
            for (int i = 0; i < n; ++i) {
                const double r1 = e[0] + m + frac(i) * (e[2] - e[0] - 2.0 * m);
                for (int j = 0; j < n; ++j) {
                    const double lo = std::max(r1, e[1]) + m;
                    const double r2 = lo + frac(j) * (e[3] - m - lo);
                    pts.push_back({H2 * (r1 + r2), H2 * r1 * r2});
                }
            }
            return pts;
        }
        case Family::Prolate:
            for (int i = 0; i < n; ++i) {
                const double l =
                    std::sqrt(H2) * (-1.0 + m + frac(i) * (2.0 - 2.0 * m));
                const double top = spec.b * (H2 - l * l);
                for (int j = 0; j < n; ++j)
                    pts.push_back({l, m + frac(j) * (top - 2.0 * m)});
            }
            return pts;
        case Family::Oblate: {
            const double a = spec.a;
            const double lt = std::sqrt(H2 * (a - 1.0) / a);
            for (int i = 0; i < n; ++i) {
                const double l =
                    std::sqrt(H2) * (-1.0 + m + frac(i) * (2.0 - 2.0 * m));
                const double rim = std::sqrt(a * H2) - std::sqrt(a - 1.0) * std::abs(l);
                const double top = std::abs(l) <= lt ? rim * rim : H2 - l * l;
                for (int j = 0; j < n; ++j)
                    pts.push_back({l, m + frac(j) * (top - 2.0 * m)});
            }
            return pts;
        }
        case Family::Lame:
            for (int i = 0; i < n; ++i) {
                const double F = m + frac(i) * (H2 - 2.0 * m);
                const double glo = spec.f[0] * (H2 - F), ghi = spec.f[2] * (H2 - F);
                for (int j = 0; j < n; ++j)
                    pts.push_back(
                        {F, glo + (ghi - glo) * (m + frac(j) * (1.0 - 2.0 * m))});
            }
            return pts;
        case Family::Spherical23:
            for (int i = 0; i < n; ++i) {
                const double l =
                    std::sqrt(H2) * (-1.0 + m + frac(i) * (2.0 - 2.0 * m));
                const double top = H2 - l * l;
                for (int j = 0; j < n; ++j)
                    pts.push_back({l, m + frac(j) * (top - 2.0 * m)});
            }
            return pts;
        case Family::Cylindrical:
            for (int i = 0; i < n; ++i) {
                const double l =
                    std::sqrt(H2) * (-1.0 + m + frac(i) * (2.0 - 2.0 * m));
                const double top = std::sqrt(H2) - std::abs(l);
                for (int j = 0; j < n; ++j)
                    pts.push_back(
                        {l, -top + m + frac(j) * (2.0 * top - 2.0 * m)});
            }
            return pts;
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_bifurcate(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    const auto curves = bifurcation_set(spec);

    const std::string csv_path = cfg.csv.empty() ? "bifurcation.csv" : cfg.csv;
    auto csv = open_out(csv_path);
    write_metadata(csv, "bifurcate", cfg);
    csv << "curve,color,kind,row,t,v1,v2\n";
    auto kind_name = [](CurveKind k) {
        switch (k) {
            case CurveKind::Line: return "line";
            case CurveKind::Parabola: return "parabola";
            case CurveKind::ParametricArc: return "arc";
        }
        return "arc";
    };
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& c : curves) {
        for (int k = 0; k <= cfg.samples; ++k) {
            const double t =
                c.t0 + (c.t1 - c.t0) * static_cast<double>(k) / cfg.samples;
            const Vec2 v = c.at(t);
            csv << c.name << ',' << c.color << ',' << kind_name(c.kind)
                << ",point," << num(t) << ',' << num(v[0]) << ',' << num(v[1])
                << "\n";
            xlo = std::min(xlo, v[0]);
            xhi = std::max(xhi, v[0]);
            ylo = std::min(ylo, v[1]);
            yhi = std::max(yhi, v[1]);
            if (c.t1 == c.t0) break;
        }
        for (const Vec2& v : c.vertices)
            csv << c.name << ',' << c.color << ',' << kind_name(c.kind)
                << ",vertex,," << num(v[0]) << ',' << num(v[1]) << "\n";
    }

    const std::string svg_path = cfg.svg.empty() ? "bifurcation.svg" : cfg.svg;
    auto svg = open_out(svg_path);
    svg_header(svg);
    const PlaneMap pm = PlaneMap::fit(xlo, xhi, ylo, yhi);
    for (const auto& c : curves) {
        if (c.t1 == c.t0) {
            const Vec2 v = c.at(c.t0);
            svg << "<circle cx=\"" << pm.px(v[0]) << "\" cy=\"" << pm.py(v[1])
                << "\" r=\"6\" fill=\"" << c.color << "\"/>\n";
            continue;
        }
        svg << "<polyline fill=\"none\" stroke=\"" << c.color
            << "\" stroke-width=\"2\" points=\"";
        for (int k = 0; k <= cfg.samples; ++k) {
            const double t =
                c.t0 + (c.t1 - c.t0) * static_cast<double>(k) / cfg.samples;
            const Vec2 v = c.at(t);
            svg << pm.px(v[0]) << ',' << pm.py(v[1]) << ' ';
        }
        svg << "\"/>\n";
        for (const Vec2& v : c.vertices)
            svg << "<circle cx=\"" << pm.px(v[0]) << "\" cy=\"" << pm.py(v[1])
                << "\" r=\"4\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    return 0;
}

int cmd_actions(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    const auto values = image_grid(spec, cfg.grid);
    std::vector<ActionTriple> triples(values.size());
    parallel_for(values.size(), resolve_threads(cfg.threads), [&](size_t i) {
        triples[i] = action_triple(values[i], spec, cfg.tol);
    });

    const std::string csv_path = cfg.csv.empty() ? "actions.csv" : cfg.csv;
    auto csv = open_out(csv_path);
    write_metadata(csv, "actions", cfg);
    csv << "v1,v2,J1,J2,J3\n";
    for (size_t i = 0; i < values.size(); ++i)
        csv << num(values[i].v1) << ',' << num(values[i].v2) << ','
            << num(triples[i].J1) << ',' << num(triples[i].J2) << ','
            << num(triples[i].J3) << "\n";

    // Ternary plot: J = J1 A + J2 B + J3 C in the action triangle.
    const std::string svg_path = cfg.svg.empty() ? "actions.svg" : cfg.svg;
    auto svg = open_out(svg_path);
    svg_header(svg);
    const double Ax = 60, Ay = 740, Bx = 740, By = 740, Cx = 400, Cy = 60;
    svg << "<polygon fill=\"none\" stroke=\"black\" points=\"" << Ax << ',' << Ay
        << ' ' << Bx << ',' << By << ' ' << Cx << ',' << Cy << "\"/>\n";
    const double root = std::sqrt(spec.two_h);
    for (const auto& J : triples) {
        const double u1 = J.J1 / root, u2 = J.J2 / root, u3 = J.J3 / root;
        svg << "<circle cx=\"" << u1 * Ax + u2 * Bx + u3 * Cx << "\" cy=\""
            << u1 * Ay + u2 * By + u3 * Cy << "\" r=\"2\" fill=\"blue\"/>\n";
    }
    svg << "</svg>\n";
    return 0;
}

int cmd_monodromy(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    const auto center = parse_list(cfg.center, 2);
    const MonodromyResult res =
        monodromy(spec, circle_loop(Vec2(center[0], center[1]), cfg.radius),
                  cfg.steps);
    json j;
    j["system"] = cfg.system;
    j["b"] = spec.b;
    j["two_h"] = spec.two_h;
    j["center"] = {center[0], center[1]};
    j["radius"] = cfg.radius;
    j["steps"] = cfg.steps;
    j["residual"] = res.residual;
    j["matrix"] = json::array();
    for (int r = 0; r < 3; ++r)
        j["matrix"].push_back(
            {res.matrix(r, 0), res.matrix(r, 1), res.matrix(r, 2)});
    write_json(cfg.out_json, j);
    return 0;
}

int cmd_polytope(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    json j;
    j["system"] = cfg.system;
    if (spec.family == Family::Ellipsoidal) {
        const auto [norm, rec] = normalize(spec.e);
        j["normalized_e"] = {norm.e[0], norm.e[1], norm.e[2], norm.e[3]};
        j["alpha"] = rec.alpha;
        j["beta"] = rec.beta;
        const double a = norm.e[2], b = norm.e[3];
        const auto [ai, bi] = involution(a, b);
        j["involution"] = {ai, bi};
        const BlowupChart c = blowup(a, b);
        j["blowup_q"] = c.q;
        j["blowup_r"] = c.r;
    } else if (spec.family == Family::Prolate) {
        const SemitoricPolygon poly = semitoric_polygon(spec);
        j["vertices"] = json::array();
        for (const Vec2& v : poly.vertices) j["vertices"].push_back({v[0], v[1]});
        j["fake_corner"] = {poly.fake_corner[0], poly.fake_corner[1]};
        j["focus_focus"] = {poly.focus_focus[0], poly.focus_focus[1]};
        j["height"] = poly.height;
    } else {
        throw std::invalid_argument(
            "polytope: requires --system ellipsoidal or prolate");
    }
    write_json(cfg.out_json, j);
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    std::mt19937_64 rng(cfg.seed);
    const CotangentPoint p0 = random_cotangent_point(rng);
    const Trajectory traj = integrate_geodesic(p0, cfg.T, cfg.tol, spec);

    const std::string csv_path = cfg.csv.empty() ? "trajectory.csv" : cfg.csv;
    auto csv = open_out(csv_path);
    write_metadata(csv, "simulate", cfg);
    csv << "t,x1,x2,x3,x4,y1,y2,y3,y4\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        csv << num(traj.times[i]);
        for (int k = 0; k < 8; ++k) csv << ',' << num(traj.states[i][k]);
        csv << "\n";
    }

    json j;
    j["system"] = cfg.system;
    j["T"] = cfg.T;
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    j["samples"] = traj.times.size();
    for (const auto& d : traj.drifts) j["drift_" + d.name] = d.max_drift;
    write_json(cfg.out_json, j);
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    const auto p = parse_list(cfg.point, 6);
    Vec6 v;
    for (int k = 0; k < 6; ++k) v[k] = p[k];
    const Bivector L = Bivector::of(v);
    const auto [c1, c2] = casimirs(L);
    const IntegralValues iv = integral_values(L, spec);
    const ChamberResult ch = chamber(iv, spec);
    json j;
    j["system"] = cfg.system;
    j["point"] = {p[0], p[1], p[2], p[3], p[4], p[5]};
    j["type"] = singularity_name(classify(L, spec));
    j["casimir1"] = c1;
    j["casimir2"] = c2;
    j["v1"] = iv.v1;
    j["v2"] = iv.v2;
    j["outside"] = ch.outside;
    j["chamber"] = {ch.code[0], ch.code[1]};
    j["multiplicity"] = ch.multiplicity;
    write_json(cfg.out_json, j);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const SystemSpec spec = make_spec(cfg);
    std::mt19937_64 rng(cfg.seed);
    json j;
    j["system"] = cfg.system;
    j["seed"] = cfg.seed;
    bool ok = true;

    // Commutation of the integral pair.
    const auto [f, g] = build_integrals(spec);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Bivector L = random_leaf_point(rng, spec.two_h);
        const double scale = std::max(1.0, std::abs(f.value(L))) *
                             std::max(1.0, std::abs(g.value(L)));
        worst = std::max(worst, std::abs(lp_bracket(f, g, L)) / scale);
    }
    j["commutation_max"] = worst;
    ok = ok && worst < 1e-10;

    // Action sum rule on a coarse interior grid.
    const auto values = image_grid(spec, 8);
    std::vector<double> defects(values.size());
    parallel_for(values.size(), resolve_threads(cfg.threads), [&](size_t i) {
        defects[i] =
            std::abs(action_triple(values[i], spec, cfg.tol).sum() -
                     std::sqrt(spec.two_h));
    });
    double sum_defect = 0.0;
    for (double d : defects) sum_defect = std::max(sum_defect, d);
    j["sum_rule_max"] = sum_defect;
    ok = ok && sum_defect < 1e-7;

    // Conservation along the geodesic flow.
    const Trajectory traj =
        integrate_geodesic(random_cotangent_point(rng), 50.0, 1e-10, spec);
    double drift = 0.0;
    for (const auto& d : traj.drifts)
        drift = std::max(drift, d.max_drift / std::max(1.0, std::abs(d.initial)));
    j["conservation_max"] = drift;
    ok = ok && drift < 1e-8;

    // Pluecker round-trip.
    double plueck = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CotangentPoint p = random_cotangent_point(rng);
        const Bivector L = plucker(OrientedPlane{p.x(), p.y()});
        const OrientedPlane back = plane_from_bivector(L);
        plueck = std::max(plueck,
                          (wedge(back.x, back.y).vec() - L.vec()).norm());
    }
    j["plucker_max"] = plueck;
    ok = ok && plueck < 1e-10;

    // Prolate only: the monodromy matrix around the focus-focus value.
    if (spec.family == Family::Prolate) {
        const MonodromyResult res = monodromy(
            spec, circle_loop(Vec2(0.0, spec.two_h), 0.3 * spec.two_h), cfg.steps);
        j["monodromy"] = json::array();
        for (int r = 0; r < 3; ++r)
            j["monodromy"].push_back(
                {res.matrix(r, 0), res.matrix(r, 1), res.matrix(r, 2)});
        j["monodromy_residual"] = res.residual;
        Eigen::Matrix3i expect = Eigen::Matrix3i::Identity();
        expect(0, 1) = 2;
        expect(2, 1) = -2;
        ok = ok && res.matrix == expect && res.residual < 1e-2;
    }

    j["ok"] = ok;
    write_json(cfg.out_json, j);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // Phase one: preload variables from --config before CLI11 parses the
    // command line, so explicit flags override the file.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                apply_config_file(argv[i + 1], cfg);
            } else if (arg.rfind("--config=", 0) == 0) {
                apply_config_file(arg.substr(9), cfg);
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    }

    CLI::App app{"Integrable geodesic flows on the three-sphere: bifurcation "
                 "diagrams, actions, monodromy, and verification"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file")
        ->expected(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--system", cfg.system,
                        "ellipsoidal|prolate|oblate|lame|spherical|cylindrical");
        sub->add_option("--e", cfg.e, "ellipsoidal parameters e1,e2,e3,e4");
        sub->add_option("--b", cfg.b, "prolate parameter b > 1");
        sub->add_option("--a", cfg.a, "oblate parameter a > 1");
        sub->add_option("--f", cfg.f, "Lame parameters f1,f2,f3");
        sub->add_option("--two-h", cfg.two_h, "Casimir level 2h > 0");
        sub->add_option("--seed", cfg.seed, "random seed (default 0)");
        sub->add_option("--threads", cfg.threads,
                        "worker threads (default: STAECKEL_S3_THREADS, then "
                        "hardware)");
        sub->add_option("--tol", cfg.tol, "quadrature/integration tolerance");
        sub->add_option("--config", config_path, "JSON configuration file");
    };

    CLI::App* bif = app.add_subcommand(
        "bifurcate", "emit the bifurcation diagram as CSV and SVG");
    add_common(bif);
    bif->add_option("--samples", cfg.samples, "points sampled per curve");
    bif->add_option("--csv", cfg.csv, "output CSV path");
    bif->add_option("--svg", cfg.svg, "output SVG path");

    CLI::App* act = app.add_subcommand(
        "actions", "sweep the momentum-map image and emit the action map");
    add_common(act);
    act->add_option("--grid", cfg.grid, "grid resolution per axis (>= 2)");
    act->add_option("--csv", cfg.csv, "output CSV path");
    act->add_option("--svg", cfg.svg, "output ternary-plot SVG path");

    CLI::App* mon = app.add_subcommand(
        "monodromy", "transport the period lattice around a loop (prolate)");
    add_common(mon);
    mon->add_option("--center", cfg.center, "loop center c1,c2");
    mon->add_option("--radius", cfg.radius, "loop radius");
    mon->add_option("--steps", cfg.steps, "transport steps");
    mon->add_option("--json", cfg.out_json, "output JSON path (default stdout)");

    CLI::App* pol = app.add_subcommand(
        "polytope", "parameter-space report: normalize/involution/blow-up, or "
                    "the prolate polygon invariant");
    add_common(pol);
    pol->add_option("--json", cfg.out_json, "output JSON path (default stdout)");

    CLI::App* sim = app.add_subcommand(
        "simulate", "integrate a random geodesic and report drifts");
    add_common(sim);
    sim->add_option("--T", cfg.T, "integration time");
    sim->add_option("--csv", cfg.csv, "trajectory CSV path");
    sim->add_option("--json", cfg.out_json, "drift report JSON path");

    CLI::App* cls = app.add_subcommand(
        "classify", "classify a point of so*(4) and report its chamber");
    add_common(cls);
    cls->add_option("--point", cfg.point, "components l12,l13,l14,l23,l24,l34");
    cls->add_option("--json", cfg.out_json, "output JSON path (default stdout)");

    CLI::App* ver = app.add_subcommand(
        "verify", "run the invariant suite; nonzero exit on failure");
    add_common(ver);
    ver->add_option("--steps", cfg.steps, "monodromy transport steps");
    ver->add_option("--json", cfg.out_json, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        validate_config(cfg);
        if (bif->parsed()) return cmd_bifurcate(cfg);
        if (act->parsed()) return cmd_actions(cfg);
        if (mon->parsed()) return cmd_monodromy(cfg);
        if (pol->parsed()) return cmd_polytope(cfg);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (cls->parsed()) return cmd_classify(cfg);
        if (ver->parsed()) return cmd_verify(cfg);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
