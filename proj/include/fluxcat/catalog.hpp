#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fluxcat/bcs.hpp"
#include "fluxcat/device.hpp"

namespace fluxcat {

/// Materials and devices loaded from one catalog document. Immutable after
/// load; report generation reads it concurrently without locking.
struct Catalog {
    std::vector<Material> materials;
    std::vector<Device> devices;

    const Material& material(std::string_view name) const;
    const Device& device(std::string_view name) const;
    const Material& material_for(const Device& device) const;
};

/// Parses and validates a catalog document. Quantities arrive as
/// {value, unit} pairs with units from a fixed whitelist and are converted
/// to SI here; unknown fields, bad units and broken references are
/// rejected with the offending JSON pointer. `source` names the document
/// in diagnostics.
Catalog parse_catalog(std::string_view text, const std::string& source);

/// parse_catalog over a file; parse errors carry line:column positions.
Catalog load_catalog(const std::string& path);

/// The compiled-in presets (the same document as data/presets.json).
const Catalog& bundled_catalog();
std::string_view bundled_catalog_text();

/// Serializes a catalog back to the document format, quantities in SI
/// base units. parse_catalog(catalog_to_json(c)) reproduces every value
/// bit-for-bit.
std::string catalog_to_json(const Catalog& catalog);

}  // namespace fluxcat
