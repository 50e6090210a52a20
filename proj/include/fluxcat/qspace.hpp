#pragma once

#include "fluxcat/bcs.hpp"
#include "fluxcat/vec3.hpp"

namespace fluxcat {

/// Radial measure used when converting the q-integral to an energy
/// integral. `leading` freezes q at k_F in the Jacobian (the coherence
/// factor suppresses everything far from the Fermi surface); `exact`
/// keeps the full q(xi) dependence and exists for the error study.
enum class RadialJacobian { leading, exact };

/// Knobs for the momentum-space quadrature of |delta n_q|.
///
/// The radial variable is xi with the substitution xi = Delta sinh(t),
/// which turns the Delta^2/Omega^3 peak into sech^2(t); a composite
/// trapezoid rule in t then converges at second order (error drops 4x per
/// doubling of radial_points). The angular variable is cos(theta) about
/// the velocity-difference axis, integrated by Gauss-Legendre using the
/// evenness of |cos(theta)|.
struct QuadratureSpec {
    double xi_cutoff = 50.0;    // integrate |xi| <= xi_cutoff * Delta
    int radial_points = 2048;   // trapezoid panels in t
    int angular_points = 64;    // Gauss-Legendre nodes in cos(theta)
    bool tail_correction = true;
    RadialJacobian jacobian = RadialJacobian::leading;

    /// Enforces xi_cutoff >= 10 and point counts >= 16.
    void validate() const;
};

/// Local occupation-change and current-difference densities at a point.
struct LocalDifference {
    double delta_n_density;  // [1/m^3]
    double delta_j_density;  // [A/m^2]
};

/// Number of electrons changing modes per unit volume, by spherical
/// quadrature of |delta n_q| over q-space:
///
///   delta_n(r) = 1/2 sum_sigma integral d^3q/(2pi)^3 |delta n_q|
///
/// (factor 2 for spin, factor 1/2 so an electron moved between two modes
/// is not counted twice). With tail_correction on, the analytic
/// |xi| > cutoff*Delta remainder of the Delta^2/Omega^3 integral,
/// 2(1 - c/sqrt(1+c^2)), is added at leading order.
/// Errors: invalid expansion ratio; non-convergence (the value is checked
/// against a half-resolution run; relative change > 1e-3 throws).
double delta_n_density_numeric(const Material& material, Vec3 delta_v,
                               const QuadratureSpec& spec);

/// Closed form of the same density: 3 |delta_j| / (4 e v_F).
double delta_n_density_analytic(const Material& material, double delta_j_magnitude);

/// Current-density difference e rho_e |delta_v| with the free-electron
/// rho_e = k_F^3/(3 pi^2).
double delta_j_from_delta_v(const Material& material, Vec3 delta_v);
double delta_j_from_delta_v(const Material& material, double delta_v_magnitude);

/// Both densities for one velocity difference.
LocalDifference local_difference(const Material& material, Vec3 delta_v,
                                 const QuadratureSpec& spec);

/// |numeric - analytic| / analytic for the local relation; the executable
/// bridge between the q-integral and the closed form.
double verify_local_relation(const Material& material, Vec3 delta_v,
                             const QuadratureSpec& spec);

namespace detail {
/// Per-spin density (no spin sum, no double-counting division). The public
/// value is exactly (2 * single_spin) / 2; tests assert the identity.
double delta_n_density_single_spin(const Material& material, Vec3 delta_v,
                                   const QuadratureSpec& spec);
/// Dimensionless radial integral J(c) = int Delta^2/Omega^3 dxi / Delta
/// over the requested window (with the exact-Jacobian weight if selected),
/// tail not included. Exposed for convergence tests.
double radial_kernel(const Material& material, const QuadratureSpec& spec, int panels);
/// Analytic leading-order tail 2(1 - c/sqrt(1+c^2)).
double radial_tail(double xi_cutoff);
}  // namespace detail

}  // namespace fluxcat
