#pragma once

#include <cstdint>
#include <vector>

#include "fluxcat/bcs.hpp"
#include "fluxcat/mode_shift.hpp"

namespace fluxcat {

/// Discrete momentum grid for the brute-force oracle: a periodic cube of
/// side box_length carries modes q = (2pi/box_length) * (i, j, k) with
/// each index in [-max_mode_index, max_mode_index].
///
/// Real materials (Delta/eps_F ~ 1e-4) are not resolvable on a desk-size
/// grid; the oracle is meant to run with an exaggerated gap ratio in
/// [0.01, 0.05] and verifies the material-independent coefficient and
/// scaling laws of the continuum result, not experimental mode counts.
struct LatticeSpec {
    double box_length = 0.0;  // [m]
    int max_mode_index = 0;   // modes per axis: 2*max_mode_index + 1
    Material material;
    BranchPair branches;
    /// Guardrail on the total mode count (both spins). The 3-level
    /// convergence study needs far more than the default; its presets pass
    /// a higher cap explicitly (evaluation streams, memory stays small).
    std::uint64_t max_modes = 200'000'000ULL;
    int threads = 0;  // 0 = hardware concurrency
};

/// Validated, immutable lattice handle. Mode enumeration is lazy and
/// deterministic (transverse shells in ascending order on the fast path,
/// lexicographic indices otherwise); nothing per-mode is materialized.
class Lattice {
public:
    const LatticeSpec& spec() const { return spec_; }
    double mode_spacing() const { return mode_spacing_; }       // [1/m]
    std::uint64_t mode_count() const { return mode_count_; }    // both spins
    std::uint64_t memory_estimate_bytes() const { return memory_estimate_bytes_; }

private:
    friend Lattice build_lattice(const LatticeSpec& spec);
    LatticeSpec spec_;
    double mode_spacing_ = 0.0;
    std::uint64_t mode_count_ = 0;
    std::uint64_t memory_estimate_bytes_ = 0;
};

/// Checks the spec invariants and returns the handle. Fails when the grid
/// cannot resolve the coherence peak (mode spacing in energy must satisfy
/// hbar*v_F*(2pi/box_length) <= gap/4), when the boosted Fermi sphere is
/// not strictly inside the grid, or when the mode count exceeds max_modes.
Lattice build_lattice(const LatticeSpec& spec);

struct LatticeResult {
    double delta_N_lattice = 0.0;
    double delta_N_continuum_prediction = 0.0;
    double relative_deviation = 0.0;
    std::uint64_t mode_count = 0;
    double box_length = 0.0;
    int max_mode_index = 0;
    /// Both branches identical: lattice sum and prediction are exactly
    /// zero and the deviation is reported as zero rather than 0/0.
    bool exact_zero = false;
};

/// Exact brute-force total: (1/2) sum over spins and modes of
/// |n_exact(q; v_left) - n_exact(q; v_right)| with fully boosted BCS
/// occupations, compared against the continuum prediction
/// V k_F^3 |delta_v| / (4 pi^2 v_F).
LatticeResult exact_delta_N(const Lattice& lattice);

/// Same sum with the first-order occupation difference instead of the
/// exact one. Rejects branches in the invalid expansion band.
double first_order_delta_N(const Lattice& lattice);

/// Runs exact_delta_N on `levels` grids, each doubling box_length and
/// max_mode_index together so the q-grid refines at fixed coverage.
/// levels >= 2 required.
std::vector<LatticeResult> convergence_study(const LatticeSpec& base_spec, int levels);

/// Spec preset for the exaggerated-gap convergence study: gap ratio and
/// velocity ratio as given, mode spacing at the gap/4 resolution limit
/// (with a small safety factor) and the cube extending `margin` times the
/// boosted Fermi radius. Branch velocities are +/- delta_v/2 along z.
LatticeSpec study_spec(double gap_ratio = 0.02, double delta_v_ratio = 1e-2,
                       double margin = 1.05, int threads = 0);

namespace detail {
/// Single-spin mode sum behind exact_delta_N; the public value is exactly
/// (2 * single_spin) / 2.
double exact_mode_sum_single_spin(const Lattice& lattice);
double first_order_mode_sum_single_spin(const Lattice& lattice);
/// Whether both branch velocities lie on the same coordinate axis, which
/// enables the transverse-shell fast path. Exposed for tests that compare
/// the two summation paths.
bool axis_aligned(const BranchPair& branches, int& axis_out);
}  // namespace detail

}  // namespace fluxcat
