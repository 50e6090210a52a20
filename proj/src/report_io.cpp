#include "fluxcat/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fluxcat/errors.hpp"

namespace fluxcat {

using nlohmann::json;

namespace {

json range_to_json(const ValueRange& r) { return json{{"low", r.low}, {"high", r.high}}; }

ValueRange range_from_json(const json& node) {
    return ValueRange{node.at("low").get<double>(), node.at("high").get<double>()};
}

json computable_to_json(const Computable& c) {
    switch (c.state) {
        case Computable::State::ok: {
            json node = range_to_json(c.value);
            node["status"] = "ok";
            return node;
        }
        case Computable::State::unbounded:
            return json{{"status", "unbounded"}};
        case Computable::State::not_computable:
        default:
            return json{{"status", "not_computable"}, {"missing", c.missing_input}};
    }
}

Computable computable_from_json(const json& node) {
    const std::string status = node.at("status").get<std::string>();
    if (status == "ok") return Computable::ok_value(range_from_json(node));
    if (status == "unbounded") return Computable::unbounded();
    return Computable::missing(node.at("missing").get<std::string>());
}

ValidityStatus validity_status_from_string(const std::string& s) {
    if (s == "ok") return ValidityStatus::ok;
    if (s == "warn") return ValidityStatus::warn;
    return ValidityStatus::invalid;
}

json report_to_json_object(const CatSizeReport& r) {
    json doc;
    doc["schema_version"] = 1;
    doc["device"] = r.device_name;
    doc["material"] = r.material_name;
    json inputs;
    inputs["fermi_velocity_m_per_s"] = r.fermi_velocity;
    inputs["gap_J"] = r.gap;
    inputs["loop_length_m"] = r.loop_length;
    inputs["persistent_current_difference_A"] =
        range_to_json(r.persistent_current_difference);
    inputs["enclosed_area_m2"] = r.enclosed_area ? json(*r.enclosed_area) : json(nullptr);
    inputs["wire_cross_section_m2"] =
        r.wire_cross_section ? json(*r.wire_cross_section) : json(nullptr);
    doc["inputs"] = inputs;
    doc["delta_N_tot"] = range_to_json(r.delta_N_tot);
    doc["delta_mu_over_muB"] = computable_to_json(r.delta_mu_over_muB);
    doc["measurement_bound"] = computable_to_json(r.measurement_bound);
    doc["total_electrons"] = r.total_electrons ? json(*r.total_electrons) : json(nullptr);
    doc["inferred_delta_v_m_per_s"] =
        r.inferred_delta_v ? json(*r.inferred_delta_v) : json(nullptr);
    if (r.validity)
        doc["validity"] = json{{"status", to_string(r.validity->status)},
                               {"expansion_ratio", r.validity->expansion_ratio}};
    else
        doc["validity"] = json{{"status", "not_computable"},
                               {"missing", "wire_cross_section"}};
    doc["assumptions"] = r.assumptions;
    doc["metadata"] = json{{"constants", r.constants_version}};
    return doc;
}

CatSizeReport report_from_json_object(const json& doc) {
    CatSizeReport r;
    r.device_name = doc.at("device").get<std::string>();
    r.material_name = doc.at("material").get<std::string>();
    const json& inputs = doc.at("inputs");
    r.fermi_velocity = inputs.at("fermi_velocity_m_per_s").get<double>();
    r.gap = inputs.at("gap_J").get<double>();
    r.loop_length = inputs.at("loop_length_m").get<double>();
    r.persistent_current_difference =
        range_from_json(inputs.at("persistent_current_difference_A"));
    if (!inputs.at("enclosed_area_m2").is_null())
        r.enclosed_area = inputs.at("enclosed_area_m2").get<double>();
    if (!inputs.at("wire_cross_section_m2").is_null())
        r.wire_cross_section = inputs.at("wire_cross_section_m2").get<double>();
    r.delta_N_tot = range_from_json(doc.at("delta_N_tot"));
    r.delta_mu_over_muB = computable_from_json(doc.at("delta_mu_over_muB"));
    r.measurement_bound = computable_from_json(doc.at("measurement_bound"));
    if (!doc.at("total_electrons").is_null())
        r.total_electrons = doc.at("total_electrons").get<double>();
    if (!doc.at("inferred_delta_v_m_per_s").is_null())
        r.inferred_delta_v = doc.at("inferred_delta_v_m_per_s").get<double>();
    const json& validity_node = doc.at("validity");
    if (validity_node.at("status").get<std::string>() != "not_computable") {
        ValidityDiagnostics v;
        v.status = validity_status_from_string(validity_node.at("status").get<std::string>());
        v.expansion_ratio = validity_node.at("expansion_ratio").get<double>();
        r.validity = v;
    }
    r.assumptions = doc.at("assumptions").get<std::vector<std::string>>();
    r.constants_version = doc.at("metadata").at("constants").get<std::string>();
    return r;
}

std::string full_precision(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_to_json(const CatSizeReport& report, int indent) {
    return report_to_json_object(report).dump(indent) + "\n";
}

CatSizeReport report_from_json(std::string_view text) {
    try {
        return report_from_json_object(json::parse(text));
    } catch (const json::exception& e) {
        throw SchemaError("<report>", std::string("malformed report JSON: ") + e.what());
    }
}

std::string reports_to_json(const std::vector<CatSizeReport>& reports, int indent) {
    json array = json::array();
    for (const auto& r : reports) array.push_back(report_to_json_object(r));
    return array.dump(indent) + "\n";
}

std::string reports_to_csv(const std::vector<CatSizeReport>& reports) {
    std::ostringstream out;
    out << "device,material,endpoint,fermi_velocity_m_per_s,gap_J,loop_length_m,"
           "persistent_current_difference_A,enclosed_area_m2,wire_cross_section_m2,"
           "delta_N_tot,delta_mu_over_muB,measurement_bound,total_electrons,"
           "validity_status,expansion_ratio\n";
    for (const auto& r : reports) {
        const bool scalar = r.persistent_current_difference.is_scalar();
        const int endpoints = scalar ? 1 : 2;
        for (int e = 0; e < endpoints; ++e) {
            const bool high = e == 1;
            auto pick = [&](const ValueRange& range) { return high ? range.high : range.low; };
            out << csv_escape(r.device_name) << ',' << csv_escape(r.material_name) << ','
                << (scalar ? "single" : (high ? "high" : "low")) << ','
                << full_precision(r.fermi_velocity) << ',' << full_precision(r.gap) << ','
                << full_precision(r.loop_length) << ','
                << full_precision(pick(r.persistent_current_difference)) << ','
                << (r.enclosed_area ? full_precision(*r.enclosed_area) : "") << ','
                << (r.wire_cross_section ? full_precision(*r.wire_cross_section) : "") << ','
                << full_precision(pick(r.delta_N_tot)) << ',';
            if (r.delta_mu_over_muB.state == Computable::State::ok)
                out << full_precision(pick(r.delta_mu_over_muB.value));
            out << ',';
            // N/delta_N swaps endpoints; re-swap so each row stays one endpoint.
            if (r.measurement_bound.state == Computable::State::ok)
                out << full_precision(high ? r.measurement_bound.value.low
                                           : r.measurement_bound.value.high);
            else if (r.measurement_bound.state == Computable::State::unbounded)
                out << "inf";
            out << ',' << (r.total_electrons ? full_precision(*r.total_electrons) : "") << ',';
            if (r.validity)
                out << to_string(r.validity->status) << ','
                    << full_precision(r.validity->expansion_ratio);
            else
                out << "not_computable,";
            out << '\n';
        }
    }
    return out.str();
}

std::string lattice_results_to_json(const std::vector<LatticeResult>& results, int indent) {
    json array = json::array();
    for (const auto& r : results) {
        json node;
        node["box_length_m"] = r.box_length;
        node["max_mode_index"] = r.max_mode_index;
        node["mode_count"] = r.mode_count;
        node["delta_N_lattice"] = r.delta_N_lattice;
        node["delta_N_continuum_prediction"] = r.delta_N_continuum_prediction;
        node["relative_deviation"] = r.relative_deviation;
        node["exact_zero"] = r.exact_zero;
        array.push_back(node);
    }
    return array.dump(indent) + "\n";
}

std::string lattice_results_to_csv(const std::vector<LatticeResult>& results) {
    std::ostringstream out;
    out << "box_length_m,max_mode_index,mode_count,delta_N_lattice,"
           "delta_N_continuum_prediction,relative_deviation,exact_zero\n";
    for (const auto& r : results) {
        out << full_precision(r.box_length) << ',' << r.max_mode_index << ','
            << r.mode_count << ',' << full_precision(r.delta_N_lattice) << ','
            << full_precision(r.delta_N_continuum_prediction) << ','
            << full_precision(r.relative_deviation) << ','
            << (r.exact_zero ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace fluxcat
