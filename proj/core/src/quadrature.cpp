#include "staeckel/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr int kOrder = 15;
constexpr int kMaxDepth = 48;

struct GaussRule {
    std::array<double, kOrder> node;
    std::array<double, kOrder> weight;
};

/// Nodes/weights of the 15-point Gauss-Legendre rule on [-1, 1], computed
/// once by Newton iteration on P_15 from the Chebyshev initial guess.
GaussRule make_rule() {
    GaussRule r;
    const int n = kOrder;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.node[i] = x;
        r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& r = rule();
    const double m = 0.5 * (a + b), w = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i) sum += r.weight[i] * f(m + w * r.node[i]);
    return w * sum;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double whole, double tol, int depth) {
    if (depth > kMaxDepth)
        throw std::domain_error("integrate: adaptive recursion exceeded depth 48");
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m);
    const double right = panel(f, m, b);
    // Accept once the panel defect reaches the rounding noise of the
    // partial sums, even if the requested tolerance is tighter.
    const double floor = 4e-15 * (std::abs(left) + std::abs(right));
    if (std::abs(left + right - whole) <= std::max(tol, floor))
        return left + right;
    // Halving the tolerance on each side keeps the total error bounded
    // by tol, but never demand better than an absolute floor: narrow
    // integrable features would otherwise starve the deepest panels.
    const double child = std::max(0.5 * tol, 1e-17);
    return adapt(f, a, m, left, child, depth + 1) +
           adapt(f, m, b, right, child, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    if (a == b) return 0.0;
    return adapt(f, a, b, panel(f, a, b), tol, 0);
}

double integrate_turning(const std::function<double(double)>& q, double a, double b,
                         double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b), w = 0.5 * (b - a);
    auto g = [&](double theta) {
        const double s = m + w * std::sin(theta);
        return std::sqrt(std::max(0.0, q(s))) * w * std::cos(theta);
    };
    return integrate(g, -0.5 * M_PI, 0.5 * M_PI, tol);
}

}  // namespace staeckel
