#include <doctest.h>

#include <cmath>

#include "fluxcat/numerics.hpp"

using namespace fluxcat;

TEST_CASE("gauss-legendre: known 5-point nodes and weights") {
    const auto rule = gauss_legendre(5);
    REQUIRE(rule.size() == 5);
    CHECK(rule[2].node == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::fabs(rule[0].node) == doctest::Approx(0.9061798459386640).epsilon(1e-14));
    CHECK(std::fabs(rule[1].node) == doctest::Approx(0.5384693101056831).epsilon(1e-14));
    CHECK(rule[2].weight == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
    CHECK(rule[0].weight == doctest::Approx(0.2369268850561891).epsilon(1e-13));
    double total = 0.0;
    for (const auto& p : rule) total += p.weight;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss-legendre: exact for polynomials up to degree 2n-1") {
    for (std::size_t n : {2, 4, 7, 16, 64}) {
        const auto rule = gauss_legendre(n);
        const int degree = 2 * static_cast<int>(n) - 1;
        double integral = 0.0;
        for (const auto& p : rule) integral += p.weight * std::pow(p.node, degree - 1);
        // odd powers vanish; degree-1 is even here
        const double exact = 2.0 / degree;
        CHECK(integral == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("gauss-legendre: interval mapping") {
    const auto rule = gauss_legendre(8, 0.0, 1.0);
    double integral = 0.0;
    for (const auto& p : rule) integral += p.weight * p.node;  // int_0^1 x dx
    CHECK(integral == doctest::Approx(0.5).epsilon(1e-15));
    for (const auto& p : rule) {
        CHECK(p.node > 0.0);
        CHECK(p.node < 1.0);
    }
}

TEST_CASE("compensated summation survives cancellation-heavy streams") {
    CompensatedSum kahan;
    double naive = 0.0;
    // 1 + 1e-16 repeated: naive drops every small term
    kahan.add(1.0);
    naive += 1.0;
    for (int i = 0; i < 10000; ++i) {
        kahan.add(1e-16);
        naive += 1e-16;
    }
    CHECK(naive == 1.0);
    CHECK(kahan.value() == doctest::Approx(1.0 + 1e-12).epsilon(1e-15));
}
