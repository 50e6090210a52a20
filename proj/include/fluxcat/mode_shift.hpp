#pragma once

#include "fluxcat/bcs.hpp"
#include "fluxcat/vec3.hpp"

namespace fluxcat {

/// The two superposed circulating-current branches, each described by its
/// mean superfluid velocity.
struct BranchPair {
    Vec3 v_left;   // [m/s]
    Vec3 v_right;  // [m/s]

    Vec3 delta_v() const { return v_left - v_right; }
    BranchPair swapped() const { return BranchPair{v_right, v_left}; }
};

enum class ValidityStatus { ok, warn, invalid };

/// Expansion-parameter diagnostics for the first-order-in-velocity
/// formulas. ratio = |v_s| / v_crit with v_crit = Delta/(m v_F).
/// Thresholds: ok < 0.1 <= warn < 0.5 <= invalid, chosen so the quadratic
/// first-order error stays ~< 1% in the ok band.
struct ValidityDiagnostics {
    double expansion_ratio = 0.0;
    ValidityStatus status = ValidityStatus::ok;
};

ValidityDiagnostics validity(const Material& material, double speed);
ValidityDiagnostics validity(const Material& material, Vec3 v_s);
const char* to_string(ValidityStatus status);

/// First-order occupation of lab-frame mode q at mean superfluid velocity
/// v_s, plus a flag recording whether the raw value left [0, 1] and was
/// clamped. Rejects |v_s| >= v_crit.
struct BoostedOccupation {
    double value;
    bool clamped;
};
BoostedOccupation occupation_boosted_detail(const Material& material, Vec3 q, Vec3 v_s);
double occupation_boosted(const Material& material, Vec3 q, Vec3 v_s);

/// Exact boosted-Fermi-sea occupation: the BCS occupation evaluated at the
/// Galilean-shifted internal momentum k = q - (m/hbar) v_s, with the gap
/// held fixed (no depairing; that is a higher-order effect). Valid for any
/// finite q; serves as the oracle for the first-order expression.
double occupation_boosted_exact(const Material& material, Vec3 q, Vec3 v_s);

/// Branch occupation difference of mode q to first order:
///   delta n_q = (Delta^2 / 2 Omega_q^3) hbar q . (v_left - v_right).
/// Antisymmetric under branch swap, linear in the velocity difference.
/// Rejects branches whose expansion ratio is in the invalid band.
/// Elastic impurity scattering leaves this difference unchanged, so the
/// downstream totals apply to clean and dirty loops alike.
double delta_n_q(const Material& material, Vec3 q, const BranchPair& branches);

/// Occupation of a Cooper-pair mode in the BCS product state. Equals the
/// single-electron occupation n_k identically; exposed so that equivalence
/// is an executable assertion. (Whether corrections beyond first order in
/// v_s preserve the identity is not decidable here and is not asserted.)
double pair_occupation_bcs(const Material& material, double k);

}  // namespace fluxcat
