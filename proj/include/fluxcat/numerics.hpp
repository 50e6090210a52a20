#pragma once

#include <cstddef>
#include <vector>

namespace fluxcat {

/// Kahan compensated accumulator. Terms in the mode sums span many orders
/// of magnitude, and golden tests require bit-stable totals.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// One Gauss-Legendre node/weight pair on [-1, 1].
struct QuadratureNode {
    double node;
    double weight;
};

/// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on Legendre
/// polynomials. Nodes returned in ascending order.
std::vector<QuadratureNode> gauss_legendre(std::size_t n);

/// Same rule mapped to [a, b].
std::vector<QuadratureNode> gauss_legendre(std::size_t n, double a, double b);

}  // namespace fluxcat
