#include "fluxcat/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fluxcat/errors.hpp"
#include "fluxcat/presets_data.hpp"

namespace fluxcat {

using nlohmann::json;

namespace {

using UnitTable = std::map<std::string, double>;

// Accepted spellings include ASCII fallbacks and both the micro sign and
// the Greek mu for the micro prefix.
const UnitTable kLengthUnits = {
    {"m", 1.0}, {"um", 1e-6}, {"µm", 1e-6}, {"μm", 1e-6}, {"nm", 1e-9}};
const UnitTable kCurrentUnits = {
    {"A", 1.0}, {"uA", 1e-6}, {"µA", 1e-6}, {"μA", 1e-6}, {"nA", 1e-9}};
const UnitTable kAreaUnits = {
    {"m^2", 1.0},  {"m²", 1.0},
    {"um^2", 1e-12}, {"um²", 1e-12}, {"µm^2", 1e-12}, {"µm²", 1e-12},
    {"μm^2", 1e-12}, {"μm²", 1e-12},
    {"nm^2", 1e-18}, {"nm²", 1e-18}};
const UnitTable kVelocityUnits = {{"m/s", 1.0}};
const UnitTable kEnergyUnits = {{"J", 1.0}, {"eV", 1.602176634e-19}, {"meV", 1.602176634e-22}};

struct SourcePos {
    int line = 1;
    int column = 1;
};

SourcePos position_of_byte(std::string_view text, std::size_t byte) {
    SourcePos pos;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

[[noreturn]] void fail(const std::string& source, const std::string& pointer,
                       const std::string& message) {
    throw SchemaError(source + ":" + (pointer.empty() ? "/" : pointer), message);
}

void check_keys(const json& obj, const std::string& source, const std::string& pointer,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end())
            fail(source, pointer + "/" + item.key(), "unknown field");
    }
}

const json& require_field(const json& obj, const std::string& source,
                          const std::string& pointer, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(source, pointer, std::string("missing field '") + key + "'");
    return *it;
}

double unit_factor(const json& quantity, const std::string& source,
                   const std::string& pointer, const UnitTable& units) {
    const json& unit = require_field(quantity, source, pointer, "unit");
    if (!unit.is_string()) fail(source, pointer + "/unit", "unit must be a string");
    const auto it = units.find(unit.get<std::string>());
    if (it == units.end()) {
        std::string allowed;
        for (const auto& [name, factor] : units) {
            (void)factor;
            if (!allowed.empty()) allowed += ", ";
            allowed += name;
        }
        fail(source, pointer + "/unit",
             "unit '" + unit.get<std::string>() + "' not in whitelist {" + allowed + "}");
    }
    return it->second;
}

double scalar_value(const json& v, const std::string& source, const std::string& pointer) {
    if (!v.is_number()) fail(source, pointer, "expected a number");
    const double x = v.get<double>();
    if (x < 0.0) fail(source, pointer, "value must be >= 0");
    return x;
}

/// {value, unit[, provenance]} with a scalar value.
double parse_quantity(const json& quantity, const std::string& source,
                      const std::string& pointer, const UnitTable& units,
                      std::string* provenance = nullptr) {
    if (!quantity.is_object()) fail(source, pointer, "expected a {value, unit} object");
    check_keys(quantity, source, pointer, {"value", "unit", "provenance"});
    const double factor = unit_factor(quantity, source, pointer, units);
    const double value =
        scalar_value(require_field(quantity, source, pointer, "value"), source,
                     pointer + "/value");
    if (provenance && quantity.contains("provenance"))
        *provenance = quantity.at("provenance").get<std::string>();
    return value * factor;
}

/// Same, but the value may be [low, high].
ValueRange parse_quantity_range(const json& quantity, const std::string& source,
                                const std::string& pointer, const UnitTable& units) {
    if (!quantity.is_object()) fail(source, pointer, "expected a {value, unit} object");
    check_keys(quantity, source, pointer, {"value", "unit", "provenance"});
    const double factor = unit_factor(quantity, source, pointer, units);
    const json& v = require_field(quantity, source, pointer, "value");
    if (v.is_array()) {
        if (v.size() != 2)
            fail(source, pointer + "/value", "range must be a [low, high] pair");
        const double low = scalar_value(v[0], source, pointer + "/value/0") * factor;
        const double high = scalar_value(v[1], source, pointer + "/value/1") * factor;
        if (low > high) fail(source, pointer + "/value", "range must satisfy low <= high");
        return ValueRange{low, high};
    }
    return ValueRange::scalar(scalar_value(v, source, pointer + "/value") * factor);
}

Material parse_material(const json& node, const std::string& source,
                        const std::string& pointer) {
    if (!node.is_object()) fail(source, pointer, "expected a material object");
    check_keys(node, source, pointer, {"name", "fermi_velocity", "gap", "provenance"});
    const json& name = require_field(node, source, pointer, "name");
    if (!name.is_string()) fail(source, pointer + "/name", "name must be a string");
    const double v_f = parse_quantity(require_field(node, source, pointer, "fermi_velocity"),
                                      source, pointer + "/fermi_velocity", kVelocityUnits);
    const double gap = parse_quantity(require_field(node, source, pointer, "gap"), source,
                                      pointer + "/gap", kEnergyUnits);
    try {
        return make_material(name.get<std::string>(), v_f, gap);
    } catch (const ValidationError& e) {
        fail(source, pointer, e.what());
    }
}

Device parse_device(const json& node, const std::string& source,
                    const std::string& pointer) {
    if (!node.is_object()) fail(source, pointer, "expected a device object");
    check_keys(node, source, pointer,
               {"name", "material", "loop_length", "persistent_current_difference",
                "enclosed_area", "wire_cross_section", "provenance"});
    Device d;
    const json& name = require_field(node, source, pointer, "name");
    if (!name.is_string()) fail(source, pointer + "/name", "name must be a string");
    d.name = name.get<std::string>();
    const json& material = require_field(node, source, pointer, "material");
    if (!material.is_string()) fail(source, pointer + "/material", "must be a string");
    d.material_ref = material.get<std::string>();
    d.loop_length = parse_quantity(require_field(node, source, pointer, "loop_length"),
                                   source, pointer + "/loop_length", kLengthUnits);
    d.persistent_current_difference = parse_quantity_range(
        require_field(node, source, pointer, "persistent_current_difference"), source,
        pointer + "/persistent_current_difference", kCurrentUnits);
    if (node.contains("enclosed_area"))
        d.enclosed_area = parse_quantity(node.at("enclosed_area"), source,
                                         pointer + "/enclosed_area", kAreaUnits,
                                         &d.enclosed_area_provenance);
    if (node.contains("wire_cross_section"))
        d.wire_cross_section = parse_quantity(node.at("wire_cross_section"), source,
                                              pointer + "/wire_cross_section", kAreaUnits,
                                              &d.wire_cross_section_provenance);
    if (node.contains("provenance")) d.provenance = node.at("provenance").get<std::string>();
    try {
        d.validate();
    } catch (const ValidationError& e) {
        fail(source, pointer, e.what());
    }
    return d;
}

}  // namespace

Catalog parse_catalog(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const SourcePos pos = position_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
        throw SchemaError(source + ":" + std::to_string(pos.line) + ":" +
                              std::to_string(pos.column),
                          std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) fail(source, "", "top level must be an object");
    check_keys(doc, source, "", {"schema_version", "materials", "devices"});

    const json& version = require_field(doc, source, "", "schema_version");
    if (!version.is_number_integer() || version.get<int>() != 1)
        fail(source, "/schema_version", "unsupported schema_version (expected 1)");

    Catalog catalog;
    const json& materials = require_field(doc, source, "", "materials");
    if (!materials.is_array()) fail(source, "/materials", "must be an array");
    for (std::size_t i = 0; i < materials.size(); ++i)
        catalog.materials.push_back(
            parse_material(materials[i], source, "/materials/" + std::to_string(i)));

    const json& devices = require_field(doc, source, "", "devices");
    if (!devices.is_array()) fail(source, "/devices", "must be an array");
    for (std::size_t i = 0; i < devices.size(); ++i) {
        const std::string pointer = "/devices/" + std::to_string(i);
        Device d = parse_device(devices[i], source, pointer);
        const bool known = std::any_of(catalog.materials.begin(), catalog.materials.end(),
                                       [&](const Material& m) { return m.name == d.material_ref; });
        if (!known)
            fail(source, pointer + "/material",
                 "device '" + d.name + "' references unknown material '" + d.material_ref + "'");
        for (const Device& existing : catalog.devices)
            if (existing.name == d.name)
                fail(source, pointer + "/name", "duplicate device name '" + d.name + "'");
        catalog.devices.push_back(std::move(d));
    }
    return catalog;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError(path, "cannot open catalog file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_catalog(buffer.str(), path);
}

const Catalog& bundled_catalog() {
    static const Catalog catalog = parse_catalog(kBundledPresetsJson, "<bundled presets>");
    return catalog;
}

std::string_view bundled_catalog_text() { return kBundledPresetsJson; }

std::string catalog_to_json(const Catalog& catalog) {
    json doc;
    doc["schema_version"] = 1;
    doc["materials"] = json::array();
    for (const Material& m : catalog.materials) {
        json node;
        node["name"] = m.name;
        node["fermi_velocity"] = {{"value", m.fermi_velocity}, {"unit", "m/s"}};
        node["gap"] = {{"value", m.gap}, {"unit", "J"}};
        doc["materials"].push_back(node);
    }
    doc["devices"] = json::array();
    for (const Device& d : catalog.devices) {
        json node;
        node["name"] = d.name;
        node["material"] = d.material_ref;
        node["loop_length"] = {{"value", d.loop_length}, {"unit", "m"}};
        if (d.persistent_current_difference.is_scalar())
            node["persistent_current_difference"] = {
                {"value", d.persistent_current_difference.low}, {"unit", "A"}};
        else
            node["persistent_current_difference"] = {
                {"value", json::array({d.persistent_current_difference.low,
                                       d.persistent_current_difference.high})},
                {"unit", "A"}};
        if (d.enclosed_area) {
            json q = {{"value", *d.enclosed_area}, {"unit", "m^2"}};
            if (!d.enclosed_area_provenance.empty()) q["provenance"] = d.enclosed_area_provenance;
            node["enclosed_area"] = q;
        }
        if (d.wire_cross_section) {
            json q = {{"value", *d.wire_cross_section}, {"unit", "m^2"}};
            if (!d.wire_cross_section_provenance.empty())
                q["provenance"] = d.wire_cross_section_provenance;
            node["wire_cross_section"] = q;
        }
        if (!d.provenance.empty()) node["provenance"] = d.provenance;
        doc["devices"].push_back(node);
    }
    return doc.dump(2) + "\n";
}

const Material& Catalog::material(std::string_view name) const {
    for (const Material& m : materials)
        if (m.name == name) return m;
    throw ValidationError("unknown material '" + std::string(name) + "'");
}

const Device& Catalog::device(std::string_view name) const {
    for (const Device& d : devices)
        if (d.name == name) return d;
    throw ValidationError("unknown device '" + std::string(name) + "'");
}

const Material& Catalog::material_for(const Device& device) const {
    return material(device.material_ref);
}

}  // namespace fluxcat
