#include <doctest.h>

#include "fluxcat/constants.hpp"

using namespace fluxcat;

TEST_CASE("constants: CODATA 2018 values") {
    const auto c = constants();
    CHECK(c.elementary_charge == 1.602176634e-19);
    CHECK(c.reduced_planck == 1.054571817e-34);
    CHECK(c.electron_mass == 9.1093837015e-31);
    CHECK(c.bohr_magneton == 9.2740100783e-24);
    CHECK(c.electron_volt == 1.602176634e-19);
    CHECK(c.elementary_charge > 0.0);
    CHECK(c.reduced_planck > 0.0);
    CHECK(c.electron_mass > 0.0);
    CHECK(c.bohr_magneton > 0.0);
}

TEST_CASE("constants: pure and deterministic") {
    const auto a = constants();
    const auto b = constants();
    CHECK(a.elementary_charge == b.elementary_charge);
    CHECK(a.reduced_planck == b.reduced_planck);
    CHECK(a.electron_mass == b.electron_mass);
    CHECK(a.bohr_magneton == b.bohr_magneton);
    CHECK(a.electron_volt == b.electron_volt);
}
