#include "fluxcat/mode_shift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluxcat/errors.hpp"

namespace fluxcat {

ValidityDiagnostics validity(const Material& material, double speed) {
    ValidityDiagnostics d;
    d.expansion_ratio = std::fabs(speed) / material.critical_velocity;
    if (d.expansion_ratio < 0.1)
        d.status = ValidityStatus::ok;
    else if (d.expansion_ratio < 0.5)
        d.status = ValidityStatus::warn;
    else
        d.status = ValidityStatus::invalid;
    return d;
}

ValidityDiagnostics validity(const Material& material, Vec3 v_s) {
    return validity(material, norm(v_s));
}

const char* to_string(ValidityStatus status) {
    switch (status) {
        case ValidityStatus::ok: return "ok";
        case ValidityStatus::warn: return "warn";
        case ValidityStatus::invalid: return "invalid";
    }
    return "invalid";
}

namespace {

void require_below_critical(const Material& material, Vec3 v_s) {
    const double ratio = norm(v_s) / material.critical_velocity;
    if (ratio >= 1.0)
        throw ValidationError("superfluid speed " + std::to_string(norm(v_s)) +
                              " m/s reaches the depairing scale v_crit = " +
                              std::to_string(material.critical_velocity) +
                              " m/s; the first-order expansion is invalid");
}

void require_not_invalid(const Material& material, Vec3 v_s, const char* who) {
    if (validity(material, v_s).status == ValidityStatus::invalid)
        throw ValidationError(std::string(who) + ": expansion ratio |v_s|/v_crit = " +
                              std::to_string(norm(v_s) / material.critical_velocity) +
                              " is in the invalid band (>= 0.5)");
}

}  // namespace

BoostedOccupation occupation_boosted_detail(const Material& material, Vec3 q, Vec3 v_s) {
    require_below_critical(material, v_s);
    const auto c = constants();
    const double x = xi(material, norm(q));
    const double omega = std::sqrt(x * x + material.gap * material.gap);
    const double n0 = detail::occupation_from_xi(x, material.gap);
    const double shift = 0.5 * material.gap * material.gap / (omega * omega * omega) *
                         c.reduced_planck * dot(q, v_s);
    const double raw = n0 + shift;
    const double value = std::clamp(raw, 0.0, 1.0);
    return BoostedOccupation{value, value != raw};
}

double occupation_boosted(const Material& material, Vec3 q, Vec3 v_s) {
    return occupation_boosted_detail(material, q, v_s).value;
}

double occupation_boosted_exact(const Material& material, Vec3 q, Vec3 v_s) {
    const auto c = constants();
    const Vec3 k = q - (c.electron_mass / c.reduced_planck) * v_s;
    return occupation(material, norm(k));
}

double delta_n_q(const Material& material, Vec3 q, const BranchPair& branches) {
    require_not_invalid(material, branches.v_left, "delta_n_q (left branch)");
    require_not_invalid(material, branches.v_right, "delta_n_q (right branch)");
    const auto c = constants();
    const double x = xi(material, norm(q));
    const double omega = std::sqrt(x * x + material.gap * material.gap);
    return 0.5 * material.gap * material.gap / (omega * omega * omega) *
           c.reduced_planck * dot(q, branches.delta_v());
}

double pair_occupation_bcs(const Material& material, double k) {
    // <C_k^dag C_k> in the product state is the v_k^2 coherence factor,
    // which is the same closed form as the single-electron occupation.
    return detail::occupation_from_xi(xi(material, k), material.gap);
}

}  // namespace fluxcat
