#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fluxcat/errors.hpp"
#include "fluxcat/lattice.hpp"
#include "test_helpers.hpp"

using namespace fluxcat;
using fluxcat::testing::rel_diff;

namespace {

/// Continuum target recomputed independently of the library field.
double continuum_prediction(const LatticeSpec& spec) {
    const Material& m = spec.material;
    const double volume = spec.box_length * spec.box_length * spec.box_length;
    const double kf3 = m.fermi_momentum * m.fermi_momentum * m.fermi_momentum;
    return volume * kf3 * norm(spec.branches.delta_v()) /
           (4.0 * std::numbers::pi * std::numbers::pi * m.fermi_velocity);
}

/// Cheap unit-test grid: exaggerated gap, margin 1.05, ~4e7 modes.
LatticeSpec small_spec(double delta_v_ratio = 1e-2) {
    return study_spec(0.05, delta_v_ratio, 1.05);
}

}  // namespace

TEST_CASE("build: mode counting matches the grid volume") {
    // gap ratio 0.2 (diagnostic-grade material) makes a 129^3 grid legal
    const Material m = make_material_with_gap_ratio("coarse", 1.0e6, 0.2);
    LatticeSpec spec;
    spec.material = m;
    const double b = 0.25 * m.gap / (constants().reduced_planck * m.fermi_velocity);
    spec.box_length = 2.0 * std::numbers::pi / b;
    spec.max_mode_index = 64;
    spec.branches = BranchPair{Vec3{}, Vec3{}};
    const Lattice lattice = build_lattice(spec);
    CHECK(lattice.mode_count() == 2ULL * 129ULL * 129ULL * 129ULL);
    CHECK(lattice.mode_spacing() == doctest::Approx(b).epsilon(1e-12));
    CHECK(lattice.memory_estimate_bytes() > 0);
}

TEST_CASE("build: guards name their criteria") {
    const Material fine = make_material_with_gap_ratio("fine", 1.0e6, 0.01);
    const Material coarse = make_material_with_gap_ratio("coarse", 1.0e6, 0.2);
    const double b = 0.25 * coarse.gap / (constants().reduced_planck * coarse.fermi_velocity);

    LatticeSpec unresolved;
    unresolved.material = fine;  // same box, 20x smaller gap: peak unresolved
    unresolved.box_length = 2.0 * std::numbers::pi / b;
    unresolved.max_mode_index = 64;
    unresolved.branches = BranchPair{Vec3{}, Vec3{}};
    CHECK_THROWS_WITH_AS(build_lattice(unresolved),
                         doctest::Contains("gap/4"), ValidationError);

    LatticeSpec clipped;
    clipped.material = coarse;
    clipped.box_length = 2.0 * std::numbers::pi / b;
    clipped.max_mode_index = 30;  // 30*b = 0.75 k_F: sphere sticks out
    clipped.branches = BranchPair{Vec3{}, Vec3{}};
    CHECK_THROWS_WITH_AS(build_lattice(clipped),
                         doctest::Contains("clipped"), ValidationError);

    LatticeSpec too_big;
    too_big.material = coarse;
    too_big.box_length = 2.0 * std::numbers::pi / b;
    too_big.max_mode_index = 64;
    too_big.branches = BranchPair{Vec3{}, Vec3{}};
    too_big.max_modes = 1000;
    CHECK_THROWS_AS(build_lattice(too_big), ResourceLimitError);

    LatticeSpec unphysical = too_big;
    unphysical.max_modes = 200'000'000ULL;
    unphysical.branches =
        BranchPair{Vec3{0.0, 0.0, 1.5 * coarse.critical_velocity}, Vec3{}};
    CHECK_THROWS_AS(build_lattice(unphysical), ValidationError);
}

TEST_CASE("exact sum: identical branches give the exact-zero report") {
    LatticeSpec spec = small_spec();
    spec.branches = BranchPair{Vec3{0.0, 0.0, 1.0}, Vec3{0.0, 0.0, 1.0}};
    const LatticeResult r = exact_delta_N(build_lattice(spec));
    CHECK(r.delta_N_lattice == 0.0);
    CHECK(r.exact_zero);
    CHECK(r.relative_deviation == 0.0);
    spec.branches = BranchPair{Vec3{}, Vec3{}};
    const LatticeResult z = exact_delta_N(build_lattice(spec));
    CHECK(z.exact_zero);
    CHECK(z.delta_N_lattice == 0.0);
    CHECK(z.relative_deviation == 0.0);
}

TEST_CASE("exact sum: matches the continuum prediction on the study grid") {
    const LatticeSpec spec = small_spec();
    const Lattice lattice = build_lattice(spec);
    const LatticeResult r = exact_delta_N(lattice);
    CHECK(r.delta_N_continuum_prediction ==
          doctest::Approx(continuum_prediction(spec)).epsilon(1e-12));
    CHECK(r.relative_deviation < 0.05);
    CHECK(r.mode_count == lattice.mode_count());
}

TEST_CASE("exact sum: branch swap leaves the total unchanged") {
    LatticeSpec spec = small_spec();
    const double forward = exact_delta_N(build_lattice(spec)).delta_N_lattice;
    spec.branches = spec.branches.swapped();
    const double swapped = exact_delta_N(build_lattice(spec)).delta_N_lattice;
    CHECK(forward == swapped);
}

TEST_CASE("spin degeneracy: both spins are exactly twice the single-spin sum") {
    const LatticeSpec spec = small_spec();
    const Lattice lattice = build_lattice(spec);
    const double single = detail::exact_mode_sum_single_spin(lattice);
    const LatticeResult r = exact_delta_N(lattice);
    CHECK(r.delta_N_lattice == (2.0 * single) / 2.0);
    CHECK(2.0 * single == 2.0 * r.delta_N_lattice);
}

TEST_CASE("fast shell path agrees with the general mode-by-mode path") {
    LatticeSpec spec = small_spec();
    int axis = -1;
    REQUIRE(detail::axis_aligned(spec.branches, axis));
    CHECK(axis == 2);
    const double fast = exact_delta_N(build_lattice(spec)).delta_N_lattice;

    // a vanishing transverse component forces the general path without
    // perturbing any mode occupation at double precision
    const double dv = norm(spec.branches.delta_v());
    LatticeSpec nudged = spec;
    nudged.branches.v_left.x = 1e-30 * dv;
    REQUIRE(!detail::axis_aligned(nudged.branches, axis));
    const double general = exact_delta_N(build_lattice(nudged)).delta_N_lattice;
    CHECK(rel_diff(general, fast) < 1e-12);
}

TEST_CASE("direction isotropy: axis rotation exact, diagonal within 2%") {
    LatticeSpec spec = small_spec();
    const double along_z = exact_delta_N(build_lattice(spec)).delta_N_lattice;

    LatticeSpec rotated = spec;  // 90 degrees about y: z -> x
    rotated.branches = BranchPair{Vec3{spec.branches.v_left.z, 0.0, 0.0},
                                  Vec3{spec.branches.v_right.z, 0.0, 0.0}};
    const double along_x = exact_delta_N(build_lattice(rotated)).delta_N_lattice;
    CHECK(rel_diff(along_x, along_z) < 0.02);
    CHECK(rel_diff(along_x, along_z) < 1e-12);  // lattice symmetry is exact

    const double dv = norm(spec.branches.delta_v());
    const double s = 0.5 * dv / std::sqrt(3.0);
    LatticeSpec diagonal = spec;
    diagonal.branches = BranchPair{Vec3{s, s, s}, Vec3{-s, -s, -s}};
    const double along_diag = exact_delta_N(build_lattice(diagonal)).delta_N_lattice;
    CHECK(rel_diff(along_diag, along_z) < 0.02);
}

TEST_CASE("gauge consistency: a common boost barely moves the total") {
    LatticeSpec spec = small_spec();
    const double base = exact_delta_N(build_lattice(spec)).delta_N_lattice;
    const auto c = constants();
    const Lattice probe = build_lattice(spec);
    // common boost worth 0.37 mode spacings, still in the ok band
    const double u = 0.37 * c.reduced_planck * probe.mode_spacing() / c.electron_mass;
    LatticeSpec boosted = spec;
    boosted.branches.v_left.z += u;
    boosted.branches.v_right.z += u;
    const double shifted = exact_delta_N(build_lattice(boosted)).delta_N_lattice;
    CHECK(rel_diff(shifted, base) < 1e-2);
}

TEST_CASE("first-order sum: zero difference, exact doubling, invalid band") {
    LatticeSpec spec = small_spec();
    spec.branches = BranchPair{Vec3{}, Vec3{}};
    CHECK(first_order_delta_N(build_lattice(spec)) == 0.0);

    spec = small_spec();
    const double base = first_order_delta_N(build_lattice(spec));
    LatticeSpec doubled = spec;
    doubled.branches = BranchPair{2.0 * spec.branches.v_left, 2.0 * spec.branches.v_right};
    CHECK(first_order_delta_N(build_lattice(doubled)) == 2.0 * base);

    LatticeSpec invalid = spec;
    invalid.branches =
        BranchPair{Vec3{0.0, 0.0, 0.6 * spec.material.critical_velocity}, Vec3{}};
    CHECK_THROWS_AS(first_order_delta_N(build_lattice(invalid)), ValidationError);
}

TEST_CASE("first-order sum: invariant under branch swap") {
    LatticeSpec spec = small_spec();
    const double forward = first_order_delta_N(build_lattice(spec));
    spec.branches = spec.branches.swapped();
    CHECK(first_order_delta_N(build_lattice(spec)) == forward);
}

TEST_CASE("first-order sum tracks the exact sum within O((v/v_crit)^2)") {
    // asymmetric branches so second-order terms cannot cancel
    auto mismatch = [](double ratio) {
        LatticeSpec spec = small_spec();
        const double dv = ratio * spec.material.critical_velocity;
        spec.branches = BranchPair{Vec3{0.0, 0.0, dv}, Vec3{}};
        const Lattice lattice = build_lattice(spec);
        const double exact = exact_delta_N(lattice).delta_N_lattice;
        const double first = first_order_delta_N(lattice);
        return std::fabs(exact - first) / first;
    };
    const double m4 = mismatch(4e-2);
    const double m2 = mismatch(2e-2);
    const double m1 = mismatch(1e-2);
    CHECK(m4 < 4e-2 * 4e-2);
    CHECK(m2 < 2e-2 * 2e-2);
    CHECK(m1 < 1e-2 * 1e-2);
    CHECK(m2 < m4);
    CHECK(m1 < m2);
}

TEST_CASE("convergence study: refinement keeps the deviation flat or better") {
    const auto results = convergence_study(small_spec(), 2);
    REQUIRE(results.size() == 2);
    CHECK(results[1].max_mode_index == 2 * results[0].max_mode_index);
    CHECK(results[1].box_length == doctest::Approx(2.0 * results[0].box_length));
    CHECK(results[0].relative_deviation < 0.05);
    CHECK(results[1].relative_deviation < 0.05);
    CHECK(results[1].relative_deviation <=
          results[0].relative_deviation * 1.1 + 1e-12);
}

TEST_CASE("convergence study: guards and the zero-velocity case") {
    CHECK_THROWS_AS(convergence_study(small_spec(), 1), ValidationError);

    LatticeSpec zero = small_spec();
    zero.branches = BranchPair{Vec3{}, Vec3{}};
    const auto results = convergence_study(zero, 2);
    for (const auto& r : results) {
        CHECK(r.exact_zero);
        CHECK(r.relative_deviation == 0.0);
    }

    LatticeSpec capped = small_spec();
    capped.max_modes = 1000;
    CHECK_THROWS_AS(convergence_study(capped, 2), ResourceLimitError);
}

TEST_CASE("results are independent of the thread count") {
    LatticeSpec one = small_spec();
    one.threads = 1;
    LatticeSpec four = small_spec();
    four.threads = 4;
    CHECK(exact_delta_N(build_lattice(one)).delta_N_lattice ==
          exact_delta_N(build_lattice(four)).delta_N_lattice);
}
