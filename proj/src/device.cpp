#include "fluxcat/device.hpp"

#include <cmath>

#include "fluxcat/errors.hpp"

namespace fluxcat {

void Device::validate() const {
    if (!(loop_length > 0.0))
        throw ValidationError("device '" + name + "': loop_length must be > 0");
    if (persistent_current_difference.low < 0.0)
        throw ValidationError("device '" + name +
                              "': persistent_current_difference must be >= 0");
    if (persistent_current_difference.low > persistent_current_difference.high)
        throw ValidationError("device '" + name +
                              "': persistent_current_difference range must be ordered");
    if (enclosed_area && !(*enclosed_area > 0.0))
        throw ValidationError("device '" + name + "': enclosed_area must be > 0");
    if (wire_cross_section && !(*wire_cross_section > 0.0))
        throw ValidationError("device '" + name + "': wire_cross_section must be > 0");
    if (material_ref.empty())
        throw ValidationError("device '" + name + "': material reference missing");
}

ValueRange delta_N_tot(const Material& material, const Device& device) {
    device.validate();
    const double factor = 3.0 * device.loop_length /
                          (4.0 * constants().elementary_charge * material.fermi_velocity);
    return device.persistent_current_difference.scaled(factor);
}

Computable delta_mu_over_muB(const Device& device) {
    device.validate();
    if (!device.enclosed_area) return Computable::missing("enclosed_area");
    const double factor = *device.enclosed_area / constants().bohr_magneton;
    return Computable::ok_value(device.persistent_current_difference.scaled(factor));
}

Computable measurement_bound(const Material& material, const Device& device) {
    device.validate();
    if (!device.wire_cross_section) return Computable::missing("wire_cross_section");
    const ValueRange dn = delta_N_tot(material, device);
    if (dn.low == 0.0) return Computable::unbounded();
    const double electrons =
        material.electron_density * device.loop_length * *device.wire_cross_section;
    // N is fixed, so the bound range is the reciprocal of the dn range.
    return Computable::ok_value(ValueRange{electrons / dn.high, electrons / dn.low});
}

CatSizeReport full_report(const Material& material, const Device& device) {
    device.validate();
    CatSizeReport r;
    r.device_name = device.name;
    r.material_name = material.name;
    r.fermi_velocity = material.fermi_velocity;
    r.gap = material.gap;
    r.loop_length = device.loop_length;
    r.persistent_current_difference = device.persistent_current_difference;
    r.enclosed_area = device.enclosed_area;
    r.wire_cross_section = device.wire_cross_section;

    r.delta_N_tot = delta_N_tot(material, device);
    r.delta_mu_over_muB = delta_mu_over_muB(device);
    r.measurement_bound = measurement_bound(material, device);
    r.constants_version = constants_version();

    if (device.wire_cross_section) {
        r.total_electrons =
            material.electron_density * device.loop_length * *device.wire_cross_section;
        // Velocity difference implied by the measured current through the
        // assumed cross-section; drives the expansion-validity diagnostic.
        const double dv = device.persistent_current_difference.high /
                          (constants().elementary_charge * material.electron_density *
                           *device.wire_cross_section);
        r.inferred_delta_v = dv;
        r.validity = validity(material, dv);
    } else {
        r.assumptions.push_back("validity not evaluated: wire_cross_section absent");
    }

    if (!device.provenance.empty()) r.assumptions.push_back(device.provenance);
    if (device.enclosed_area && !device.enclosed_area_provenance.empty())
        r.assumptions.push_back("enclosed_area: " + device.enclosed_area_provenance);
    if (device.wire_cross_section && !device.wire_cross_section_provenance.empty())
        r.assumptions.push_back("wire_cross_section: " + device.wire_cross_section_provenance);
    if (material.approximation_warning())
        r.assumptions.push_back("material gap ratio " + std::to_string(material.gap_ratio()) +
                                " exceeds 0.05; near-Fermi-surface approximation degraded");
    return r;
}

}  // namespace fluxcat
