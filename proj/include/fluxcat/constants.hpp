#pragma once

namespace fluxcat {

/// Fundamental constants, SI units, 2018 CODATA (SI-defining values are
/// exact). Fixed, not configurable; golden-file tests depend on them.
struct PhysicalConstants {
    double elementary_charge;  // e   [C]
    double reduced_planck;     // hbar [J s]
    double electron_mass;      // m_e [kg]
    double bohr_magneton;      // mu_B [J/T]
    double electron_volt;      // eV  [J]
};

/// The single shared constant set. Pure and immutable; every call returns
/// the same values.
constexpr PhysicalConstants constants() {
    return PhysicalConstants{
        1.602176634e-19,    // e, exact SI definition
        1.054571817e-34,    // hbar = h/2pi, from exact h
        9.1093837015e-31,   // m_e
        9.2740100783e-24,   // mu_B
        1.602176634e-19,    // eV in joules, exact
    };
}

/// Tag recorded in report metadata so consumers can tell which constant
/// set produced a file.
inline const char* constants_version() { return "CODATA-2018"; }

}  // namespace fluxcat
