#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxcat/bcs.hpp"
#include "fluxcat/mode_shift.hpp"

namespace fluxcat {

/// Closed interval [low, high]; a scalar is stored as low == high.
/// Measured current differences are sometimes published as ranges, and
/// every linear output maps them endpoint-wise.
struct ValueRange {
    double low = 0.0;
    double high = 0.0;

    static ValueRange scalar(double v) { return {v, v}; }
    bool is_scalar() const { return low == high; }
    ValueRange scaled(double factor) const { return {factor * low, factor * high}; }
    friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

/// Flux-qubit device description. Loop length and the measured
/// persistent-current difference are required; area and cross-section are
/// optional and unlock the magnetic-moment and measurement-bound outputs.
struct Device {
    std::string name;
    std::string material_ref;
    double loop_length = 0.0;                     // L [m]
    ValueRange persistent_current_difference;     // delta I_p [A]
    std::optional<double> enclosed_area;          // A [m^2]
    std::optional<double> wire_cross_section;     // [m^2]
    std::string provenance;
    std::string enclosed_area_provenance;
    std::string wire_cross_section_provenance;

    void validate() const;  // throws ValidationError
};

/// A quantity that may be missing its prerequisite input, or diverge.
struct Computable {
    enum class State { ok, not_computable, unbounded };
    State state = State::not_computable;
    ValueRange value;
    std::string missing_input;  // set when not_computable

    static Computable ok_value(ValueRange v) { return {State::ok, v, {}}; }
    static Computable missing(std::string input) {
        return {State::not_computable, {}, std::move(input)};
    }
    static Computable unbounded() { return {State::unbounded, {}, {}}; }
};

/// Effective superposition size: delta_N_tot = 3 L delta_I_p / (4 e v_F).
/// Independent of the gap, the electron density and the wire geometry;
/// linear in L and in the current difference, endpoint-wise on ranges.
ValueRange delta_N_tot(const Material& material, const Device& device);

/// Magnetic-moment difference A * delta_I_p in Bohr magnetons; requires
/// the enclosed area.
Computable delta_mu_over_muB(const Device& device);

/// N / delta_N_tot with N = rho_e * L * cross_section the conduction
/// electrons in the loop volume; requires the wire cross-section, and a
/// zero current difference makes it unbounded.
Computable measurement_bound(const Material& material, const Device& device);

/// Everything the artifact can say about one device. Non-computable
/// fields carry the name of the missing prerequisite instead of a zero.
struct CatSizeReport {
    std::string device_name;
    std::string material_name;
    // inputs echoed in SI units
    double fermi_velocity = 0.0;
    double gap = 0.0;
    double loop_length = 0.0;
    ValueRange persistent_current_difference;
    std::optional<double> enclosed_area;
    std::optional<double> wire_cross_section;
    // results
    ValueRange delta_N_tot;
    Computable delta_mu_over_muB;
    Computable measurement_bound;
    std::optional<double> total_electrons;
    std::optional<double> inferred_delta_v;  // delta_I_p/(e rho_e sigma), upper endpoint
    std::optional<ValidityDiagnostics> validity;
    std::vector<std::string> assumptions;
    std::string constants_version;
};

CatSizeReport full_report(const Material& material, const Device& device);

}  // namespace fluxcat
