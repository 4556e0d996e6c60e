#include "staeckel/param_space.hpp"

#include <cmath>
#include <stdexcept>

namespace staeckel {

std::pair<SystemSpec, AffineRecord> normalize(const std::array<double, 4>& e) {
    if (!(e[0] < e[1] && e[1] < e[2] && e[2] < e[3]))
        throw std::domain_error("normalize: parameters must be strictly increasing");
    const double alpha = e[1] - e[0];
    const double beta = -e[0];
    const double a = (e[2] - e[0]) / alpha;
    const double b = (e[3] - e[0]) / alpha;
    return {SystemSpec::ellipsoidal(0.0, 1.0, a, b), AffineRecord{alpha, beta}};
}

IntegralValues transform_integral_values(const IntegralValues& eta, double alpha,
                                         double beta, double h) {
    if (alpha == 0.0)
        throw std::domain_error("transform_integral_values: alpha must be nonzero");
    return IntegralValues{
        alpha * eta.v1 + 4.0 * beta * h,
        alpha * alpha * eta.v2 + alpha * beta * eta.v1 + 2.0 * beta * beta * h};
}

std::pair<double, double> involution(double a, double b) {
    if (a == b) throw std::domain_error("involution: requires a < b");
    return {(b - 1.0) / (b - a), b / (b - a)};
}

BlowupChart blowup(double a, double b) {
    if (!(1.0 <= a && a <= b))
        throw std::domain_error("blowup: requires 1 <= a <= b");
    if (b == 1.0)
        throw std::domain_error(
            "blowup: a = b = 1 is the blown-up Lame point; supply a limit direction");
    return BlowupChart{1.0 / b, (a - 1.0) / (b - 1.0)};
}

IntegralValues DegenerationPath::predict(const IntegralValues& sv, double two_h) const {
    const double H2 = two_h;
    if (source.family == Family::Ellipsoidal) {
        const double eta1 = sv.v1, eta2 = sv.v2;
        switch (target.family) {
            case Family::Prolate: {
                const double b = target.b;
                return {(eta1 - eta2 - H2) / (b - 1.0), eta2};  // (l23^2, G_pro)
            }
            case Family::Oblate: {
                const double a = target.a;
                return {(a * H2 + eta2 / a - eta1) / (a - 1.0), eta2 / a};  // (l34^2, G_obl)
            }
            case Family::Lame:
                return {H2 + epsilon * eta1, -epsilon * eta2};  // (F_L, G_L)
            case Family::Cylindrical:
                return {eta2, H2 + eta2 - eta1};  // (l12^2, l34^2)
            default:
                break;
        }
    } else if (source.family == Family::Lame && target.family == Family::Spherical23) {
        const double F = sv.v1, G = sv.v2;
        return {H2 - F - G, F};  // (l34^2, G_23)
    } else if (source.family == Family::Oblate && target.family == Family::Spherical23) {
        return {sv.v1 * sv.v1, sv.v2};  // (l34^2, G_23)
    }
    throw std::domain_error("DegenerationPath::predict: unsupported edge");
}

DegenerationPath degeneration_path(const SystemSpec& from, Family to, double epsilon) {
    if (!(epsilon > 0))
        throw std::domain_error("degeneration_path: epsilon must be positive");
    DegenerationPath path;
    path.epsilon = epsilon;

    if (from.family == Family::Ellipsoidal) {
        // Work with the normalized representative (0, 1, a, b).
        const auto [norm, rec] = normalize(from.e);
        const double a = norm.e[2], b = norm.e[3];
        switch (to) {
            case Family::Prolate:
                path.source = SystemSpec::ellipsoidal(0.0, 1.0, 1.0 + epsilon, b, from.two_h);
                path.target = SystemSpec::prolate(b, from.two_h);
                path.v1_is_squared = true;  // l23^2
                return path;
            case Family::Oblate:
                path.source = SystemSpec::ellipsoidal(0.0, 1.0, a, a + epsilon, from.two_h);
                path.target = SystemSpec::oblate(a, from.two_h);
                path.v1_is_squared = true;  // l34^2
                return path;
            case Family::Lame: {
                // e1 -> -infinity with the remaining three as Lame parameters.
                const double f1 = from.e[1], f2 = from.e[2], f3 = from.e[3];
                path.source = SystemSpec::ellipsoidal(-1.0 / epsilon, f1, f2, f3, from.two_h);
                path.target = SystemSpec::lame(f1, f2, f3, from.two_h);
                return path;
            }
            case Family::Cylindrical:
                path.source =
                    SystemSpec::ellipsoidal(0.0, epsilon, 1.0, 1.0 + epsilon, from.two_h);
                path.target = SystemSpec::cylindrical(from.two_h);
                path.v1_is_squared = true;  // l12^2
                path.v2_is_squared = true;  // l34^2
                return path;
            default:
                break;
        }
    } else if (from.family == Family::Lame && to == Family::Spherical23) {
        path.source = SystemSpec::lame(0.0, 1.0, 1.0 + epsilon, from.two_h);
        path.target = SystemSpec::spherical23(from.two_h);
        path.v1_is_squared = true;  // l34^2
        return path;
    } else if (from.family == Family::Oblate && to == Family::Spherical23) {
        path.source = SystemSpec::oblate(1.0 + epsilon, from.two_h);
        path.target = SystemSpec::spherical23(from.two_h);
        path.v1_is_squared = true;  // l34^2
        return path;
    }
    throw std::domain_error("degeneration_path: target not reachable from source family");
}

}  // namespace staeckel
