#include "fluxcat/bcs.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "fluxcat/errors.hpp"

namespace fluxcat {

Material make_material(std::string name, double fermi_velocity, double gap) {
    if (!(fermi_velocity > 0.0))
        throw ValidationError("material '" + name + "': fermi_velocity must be > 0");
    if (!(gap > 0.0))
        throw ValidationError("material '" + name + "': gap must be > 0");

    const auto c = constants();
    Material m;
    m.name = std::move(name);
    m.fermi_velocity = fermi_velocity;
    m.gap = gap;
    m.fermi_momentum = c.electron_mass * fermi_velocity / c.reduced_planck;
    m.fermi_energy = 0.5 * c.electron_mass * fermi_velocity * fermi_velocity;
    m.electron_density = m.fermi_momentum * m.fermi_momentum * m.fermi_momentum /
                         (3.0 * std::numbers::pi * std::numbers::pi);
    m.critical_velocity = gap / (c.electron_mass * fermi_velocity);

    if (!(m.gap_ratio() < 0.5))
        throw ValidationError("material '" + m.name +
                              "': gap/fermi_energy must be < 0.5 (weak coupling), got " +
                              std::to_string(m.gap_ratio()));
    return m;
}

Material make_material_with_gap_ratio(std::string name, double fermi_velocity,
                                      double gap_to_fermi_ratio) {
    const auto c = constants();
    const double eps_f = 0.5 * c.electron_mass * fermi_velocity * fermi_velocity;
    return make_material(std::move(name), fermi_velocity, gap_to_fermi_ratio * eps_f);
}

namespace {

void require_nonnegative_wavenumber(double k) {
    if (k < 0.0) throw ValidationError("wavenumber k must be >= 0");
}

}  // namespace

double xi(const Material& material, double k) {
    require_nonnegative_wavenumber(k);
    const auto c = constants();
    const double hbar_k = c.reduced_planck * k;
    return hbar_k * hbar_k / (2.0 * c.electron_mass) - material.fermi_energy;
}

namespace detail {

double occupation_from_xi(double xi_value, double gap) {
    const double omega = std::sqrt(xi_value * xi_value + gap * gap);
    if (xi_value > 0.0) return gap * gap / (2.0 * omega * (omega + xi_value));
    return 0.5 * (1.0 - xi_value / omega);
}

}  // namespace detail

double quasiparticle_energy(const Material& material, double k) {
    const double x = xi(material, k);
    return std::sqrt(x * x + material.gap * material.gap);
}

double occupation(const Material& material, double k) {
    return detail::occupation_from_xi(xi(material, k), material.gap);
}

double condensation_amplitude(const Material& material, double k) {
    return material.gap / (2.0 * quasiparticle_energy(material, k));
}

ModeQuantities mode_quantities(const Material& material, double k) {
    const double x = xi(material, k);
    const double omega = std::sqrt(x * x + material.gap * material.gap);
    return ModeQuantities{
        x,
        omega,
        detail::occupation_from_xi(x, material.gap),
        material.gap / (2.0 * omega),
    };
}

}  // namespace fluxcat
