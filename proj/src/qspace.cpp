#include "fluxcat/qspace.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fluxcat/errors.hpp"
#include "fluxcat/mode_shift.hpp"
#include "fluxcat/numerics.hpp"

namespace fluxcat {

void QuadratureSpec::validate() const {
    if (!(xi_cutoff >= 10.0))
        throw ValidationError("QuadratureSpec: xi_cutoff must be >= 10, got " +
                              std::to_string(xi_cutoff));
    if (radial_points < 16)
        throw ValidationError("QuadratureSpec: radial_points must be >= 16");
    if (angular_points < 16)
        throw ValidationError("QuadratureSpec: angular_points must be >= 16");
}

namespace detail {

double radial_tail(double xi_cutoff) {
    const double c = xi_cutoff;
    return 2.0 * (1.0 - c / std::sqrt(1.0 + c * c));
}

double radial_kernel(const Material& material, const QuadratureSpec& spec, int panels) {
    // In units x = xi/Delta the kernel is int dx (1 + r x)/(1+x^2)^(3/2)
    // with r = Delta/eps_F for the exact Jacobian and r = 0 for the
    // leading one. Substituting x = sinh t gives sech^2(t) (1 + r sinh t).
    // The exact window stops at xi = -eps_F (q = 0) when the cutoff
    // reaches below the band bottom.
    const double r = spec.jacobian == RadialJacobian::exact ? material.gap_ratio() : 0.0;
    const double t_hi = std::asinh(spec.xi_cutoff);
    const double t_lo = spec.jacobian == RadialJacobian::exact
                            ? -std::asinh(std::min(spec.xi_cutoff, 1.0 / r))
                            : -t_hi;
    const double h = (t_hi - t_lo) / panels;
    CompensatedSum acc;
    for (int i = 0; i <= panels; ++i) {
        const double t = t_lo + h * i;
        const double sech = 1.0 / std::cosh(t);
        double f = sech * sech;
        if (r != 0.0) f *= 1.0 + r * std::sinh(t);
        acc.add((i == 0 || i == panels) ? 0.5 * f : f);
    }
    return acc.value() * h;
}

double delta_n_density_single_spin(const Material& material, Vec3 delta_v,
                                   const QuadratureSpec& spec) {
    spec.validate();
    if (validity(material, delta_v).status == ValidityStatus::invalid)
        throw ValidationError("delta_n_density_numeric: |delta_v|/v_crit = " +
                              std::to_string(norm(delta_v) / material.critical_velocity) +
                              " is in the invalid band (>= 0.5)");
    const double dv = norm(delta_v);
    if (dv == 0.0) return 0.0;

    // Angular factor: int_{-1}^{1} |c| dc, folded to 2 * int_0^1 c dc by
    // evenness about the delta_v axis.
    const auto angular_rule = gauss_legendre(static_cast<std::size_t>(spec.angular_points),
                                             0.0, 1.0);
    CompensatedSum ang;
    for (const auto& p : angular_rule) ang.add(p.weight * p.node);
    const double angular = 2.0 * ang.value();

    double radial = radial_kernel(material, spec, spec.radial_points);
    const double radial_coarse = radial_kernel(material, spec, spec.radial_points / 2);
    const double change = std::fabs(radial - radial_coarse) / std::fabs(radial);
    if (change > 1e-3)
        throw ConvergenceError(
            "delta_n_density_numeric: radial quadrature not converged (relative change " +
            std::to_string(change) + " between " + std::to_string(spec.radial_points / 2) +
            " and " + std::to_string(spec.radial_points) + " panels exceeds 1e-3)");
    if (spec.tail_correction) radial += radial_tail(spec.xi_cutoff);

    // Per spin:
    //   (1/(2pi)^3) * 2pi * angular * (hbar dv / 2) * (k_F^3/(hbar v_F)) * radial
    const double kf = material.fermi_momentum;
    const double pref = kf * kf * kf / (8.0 * std::numbers::pi * std::numbers::pi *
                                        material.fermi_velocity);
    return pref * dv * angular * radial;
}

}  // namespace detail

double delta_n_density_numeric(const Material& material, Vec3 delta_v,
                               const QuadratureSpec& spec) {
    // Spin sum then double-counting division; cancels exactly against the
    // single-spin path and tests assert it stays that way.
    return (2.0 * detail::delta_n_density_single_spin(material, delta_v, spec)) / 2.0;
}

double delta_n_density_analytic(const Material& material, double delta_j_magnitude) {
    if (delta_j_magnitude < 0.0)
        throw ValidationError("delta_n_density_analytic: current density must be >= 0");
    return 3.0 * delta_j_magnitude /
           (4.0 * constants().elementary_charge * material.fermi_velocity);
}

double delta_j_from_delta_v(const Material& material, double delta_v_magnitude) {
    return constants().elementary_charge * material.electron_density *
           std::fabs(delta_v_magnitude);
}

double delta_j_from_delta_v(const Material& material, Vec3 delta_v) {
    return delta_j_from_delta_v(material, norm(delta_v));
}

LocalDifference local_difference(const Material& material, Vec3 delta_v,
                                 const QuadratureSpec& spec) {
    return LocalDifference{
        delta_n_density_numeric(material, delta_v, spec),
        delta_j_from_delta_v(material, delta_v),
    };
}

double verify_local_relation(const Material& material, Vec3 delta_v,
                             const QuadratureSpec& spec) {
    const double numeric = delta_n_density_numeric(material, delta_v, spec);
    const double analytic =
        delta_n_density_analytic(material, delta_j_from_delta_v(material, delta_v));
    if (analytic == 0.0) return numeric == 0.0 ? 0.0 : 1.0;
    return std::fabs(numeric - analytic) / analytic;
}

}  // namespace fluxcat
