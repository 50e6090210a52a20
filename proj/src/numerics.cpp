#include "fluxcat/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fluxcat {

std::vector<QuadratureNode> gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    std::vector<QuadratureNode> rule(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                                   (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {-x, w};          // guesses start from the right edge
        rule[n - 1 - i] = {x, w};   // rule is symmetric
    }
    return rule;
}

std::vector<QuadratureNode> gauss_legendre(std::size_t n, double a, double b) {
    auto rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    for (auto& p : rule) {
        p.node = mid + halfwidth * p.node;
        p.weight *= halfwidth;
    }
    return rule;
}

}  // namespace fluxcat
