#include "staeckel/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr double kTolRF = 1e-12;
constexpr double kTolRJ = 1e-12;

}  // namespace

double carlson_rf(double x, double y, double z) {
    if (x < 0 || y < 0 || z < 0 || (x + y) == 0 || (y + z) == 0 || (x + z) == 0)
        throw std::domain_error("carlson_rf: arguments must be nonnegative, at most one zero");
    // Standard duplication iteration (Carlson 1979).
    while (true) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        const double mu = (x + y + z) / 3.0;
        const double eps =
            std::max({std::abs(x - mu), std::abs(y - mu), std::abs(z - mu)}) / mu;
        if (eps < kTolRF) {
            const double dx = (mu - x) / mu, dy = (mu - y) / mu, dz = (mu - z) / mu;
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
                   std::sqrt(mu);
        }
    }
}

double carlson_rc(double x, double y) {
    if (x < 0 || y <= 0)
        throw std::domain_error("carlson_rc: requires x >= 0, y > 0");
    return carlson_rf(x, y, y);
}

double carlson_rj(double x, double y, double z, double p) {
    if (x < 0 || y < 0 || z < 0 || (x + y) == 0 || (y + z) == 0 || (x + z) == 0)
        throw std::domain_error("carlson_rj: arguments must be nonnegative, at most one zero");
    if (p <= 0) throw std::domain_error("carlson_rj: requires p > 0");
    double sum = 0.0;
    double fac = 1.0;
    while (true) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lam = sx * (sy + sz) + sy * sz;
        const double alpha = p * (sx + sy + sz) + sx * sy * sz;
        const double beta = p * (p + lam) * (p + lam);
        sum += fac * carlson_rc(alpha * alpha, beta);
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        const double mu = (x + y + z + 2.0 * p) / 5.0;
        const double eps = std::max({std::abs(x - mu), std::abs(y - mu),
                                     std::abs(z - mu), std::abs(p - mu)}) /
                           mu;
        if (eps < kTolRJ) {
            const double dx = (mu - x) / mu, dy = (mu - y) / mu, dz = (mu - z) / mu;
            const double dp = (mu - p) / mu;
            const double ea = dx * (dy + dz) + dy * dz;
            const double eb = dx * dy * dz;
            const double ec = dp * dp;
            const double ed = ea - 3.0 * ec;
            const double ee = eb + 2.0 * dp * (ea - ec);
            const double series =
                1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * ee) +
                eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0)) +
                dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0) - dp * ec / 3.0;
            return 3.0 * sum + fac * series / (mu * std::sqrt(mu));
        }
    }
}

double complete_elliptic_k(double k) {
    if (!(std::abs(k) < 1.0))
        throw std::domain_error("complete_elliptic_k: requires |k| < 1");
    return carlson_rf(0.0, 1.0 - k * k, 1.0);
}

double complete_elliptic_pi(double alpha, double k) {
    if (!(std::abs(k) < 1.0))
        throw std::domain_error("complete_elliptic_pi: requires |k| < 1");
    if (!(alpha < 1.0))
        throw std::domain_error("complete_elliptic_pi: requires alpha < 1");
    const double kp2 = 1.0 - k * k;
    return carlson_rf(0.0, kp2, 1.0) +
           (alpha / 3.0) * carlson_rj(0.0, kp2, 1.0, 1.0 - alpha);
}

}  // namespace staeckel
