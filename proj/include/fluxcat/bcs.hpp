#pragma once

#include <string>

#include "fluxcat/constants.hpp"

namespace fluxcat {

/// Superconductor parameters. The primary inputs are the Fermi velocity
/// and the pairing gap; everything else follows from the free-electron
/// relations with the bare electron mass:
///
///   k_F = m v_F / hbar,  eps_F = m v_F^2 / 2,  rho_e = k_F^3 / (3 pi^2).
///
/// The band-vs-bare mass choice only moves k_F and rho_e diagnostics; the
/// headline loop formula does not contain them.
struct Material {
    std::string name;
    double fermi_velocity = 0.0;    // v_F   [m/s]
    double gap = 0.0;               // Delta [J]
    // derived
    double fermi_momentum = 0.0;    // k_F   [1/m]
    double fermi_energy = 0.0;      // eps_F [J]
    double electron_density = 0.0;  // rho_e [1/m^3]
    double critical_velocity = 0.0; // Delta/(m v_F) [m/s], depairing scale

    double gap_ratio() const { return gap / fermi_energy; }
    /// The weak-coupling formulas assume Delta << eps_F; above 5% the
    /// near-Fermi-surface approximation visibly degrades.
    bool approximation_warning() const { return gap_ratio() > 0.05; }
};

/// Validates v_F > 0, Delta > 0 and Delta/eps_F < 0.5, fills the derived
/// fields. Throws ValidationError otherwise.
Material make_material(std::string name, double fermi_velocity, double gap);

/// Convenience for synthetic test materials specified by Delta/eps_F.
Material make_material_with_gap_ratio(std::string name, double fermi_velocity,
                                      double gap_to_fermi_ratio);

/// All zero-temperature single-mode quantities at wavenumber k.
struct ModeQuantities {
    double xi;                      // normal-state energy from eps_F [J]
    double quasiparticle_energy;    // Omega = sqrt(xi^2 + Delta^2)   [J]
    double occupation;              // n_k in [0, 1]
    double condensation_amplitude;  // Delta/(2 Omega) in [0, 1/2]
};

/// xi_k = hbar^2 k^2 / 2m - eps_F. k >= 0 required.
double xi(const Material& material, double k);

/// Omega_k = sqrt(xi^2 + Delta^2) >= Delta.
double quasiparticle_energy(const Material& material, double k);

/// n_k = (1 - xi/Omega)/2, evaluated in a cancellation-free form.
double occupation(const Material& material, double k);

/// Pair-creation expectation Delta/(2 Omega); peaks at 1/2 on the Fermi
/// surface with energy half-width sqrt(3)*Delta (momentum width of order
/// Delta/(hbar v_F)).
double condensation_amplitude(const Material& material, double k);

ModeQuantities mode_quantities(const Material& material, double k);

namespace detail {
/// Occupation as a function of xi directly. Uses Delta^2/(2 Omega (Omega+xi))
/// for xi > 0 to avoid the 1 - xi/Omega cancellation deep outside the sea.
double occupation_from_xi(double xi_value, double gap);
}  // namespace detail

}  // namespace fluxcat
