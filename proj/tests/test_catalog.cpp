#include <doctest.h>

#include <string>

#include "fluxcat/catalog.hpp"
#include "fluxcat/errors.hpp"

using namespace fluxcat;

namespace {

std::string where_of(const SchemaError& e) { return e.where(); }

template <typename F>
std::string expect_schema_error(F&& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return where_of(e) + " | " + e.what();
    }
    FAIL("expected a SchemaError");
    return {};
}

}  // namespace

TEST_CASE("bundled presets: 3 devices, 2 materials, converted to SI") {
    const Catalog& c = bundled_catalog();
    CHECK(c.materials.size() == 2);
    CHECK(c.devices.size() == 3);
    CHECK(c.material("Al").fermi_velocity == 2.02e6);
    CHECK(c.material("Nb").fermi_velocity == 1.37e6);

    const Device& delft = c.device("Delft");
    CHECK(delft.loop_length == 20.0 * 1e-6);
    CHECK(delft.persistent_current_difference == ValueRange::scalar(900.0 * 1e-9));
    CHECK(delft.persistent_current_difference.low == doctest::Approx(9e-7).epsilon(1e-14));

    const Device& suny = c.device("SUNY");
    CHECK(suny.persistent_current_difference.low == 2.0 * 1e-6);
    CHECK(suny.persistent_current_difference.high == 3.0 * 1e-6);
    CHECK(suny.enclosed_area.has_value());
    CHECK(!suny.wire_cross_section.has_value());
    CHECK(delft.wire_cross_section.has_value());
    CHECK(*delft.wire_cross_section == 0.036 * 1e-12);
    CHECK(!delft.enclosed_area_provenance.empty());
}

TEST_CASE("unit spellings: ASCII and unicode micro both accepted") {
    const std::string text = R"({
      "schema_version": 1,
      "materials": [
        {"name": "Al", "fermi_velocity": {"value": 2.02e6, "unit": "m/s"},
         "gap": {"value": 0.18, "unit": "meV"}}
      ],
      "devices": [
        {"name": "a", "material": "Al",
         "loop_length": {"value": 20, "unit": "µm"},
         "persistent_current_difference": {"value": 900, "unit": "nA"},
         "enclosed_area": {"value": 25, "unit": "μm²"}}
      ]
    })";
    const Catalog c = parse_catalog(text, "<test>");
    CHECK(c.device("a").loop_length == 20.0 * 1e-6);
    CHECK(*c.device("a").enclosed_area == 25.0 * 1e-12);
}

TEST_CASE("schema errors carry the offending JSON pointer") {
    const std::string base = R"({
      "schema_version": 1,
      "materials": [
        {"name": "Al", "fermi_velocity": {"value": 2.02e6, "unit": "m/s"},
         "gap": {"value": 0.18, "unit": "meV"}}
      ],
      "devices": [DEVICE]
    })";
    auto with_device = [&](const std::string& device) {
        std::string text = base;
        text.replace(text.find("DEVICE"), 6, device);
        return text;
    };

    SUBCASE("unknown field") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Al",
                "loop_lenth": {"value": 20, "unit": "um"},
                "persistent_current_difference": {"value": 900, "unit": "nA"}})"),
                          "<test>");
        });
        CHECK(msg.find("/devices/0/loop_lenth") != std::string::npos);
        CHECK(msg.find("unknown field") != std::string::npos);
    }
    SUBCASE("missing field") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Al",
                "persistent_current_difference": {"value": 900, "unit": "nA"}})"),
                          "<test>");
        });
        CHECK(msg.find("missing field 'loop_length'") != std::string::npos);
    }
    SUBCASE("bad unit") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Al",
                "loop_length": {"value": 20, "unit": "furlong"},
                "persistent_current_difference": {"value": 900, "unit": "nA"}})"),
                          "<test>");
        });
        CHECK(msg.find("/devices/0/loop_length/unit") != std::string::npos);
        CHECK(msg.find("whitelist") != std::string::npos);
    }
    SUBCASE("negative value") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Al",
                "loop_length": {"value": -20, "unit": "um"},
                "persistent_current_difference": {"value": 900, "unit": "nA"}})"),
                          "<test>");
        });
        CHECK(msg.find("/devices/0/loop_length/value") != std::string::npos);
        CHECK(msg.find(">= 0") != std::string::npos);
    }
    SUBCASE("unknown material reference") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Pb",
                "loop_length": {"value": 20, "unit": "um"},
                "persistent_current_difference": {"value": 900, "unit": "nA"}})"),
                          "<test>");
        });
        CHECK(msg.find("/devices/0/material") != std::string::npos);
        CHECK(msg.find("unknown material 'Pb'") != std::string::npos);
    }
    SUBCASE("descending range") {
        const auto msg = expect_schema_error([&] {
            parse_catalog(with_device(R"({"name":"a","material":"Al",
                "loop_length": {"value": 20, "unit": "um"},
                "persistent_current_difference": {"value": [3, 2], "unit": "uA"}})"),
                          "<test>");
        });
        CHECK(msg.find("low <= high") != std::string::npos);
    }
}

TEST_CASE("parse errors report line and column") {
    const auto msg = expect_schema_error([] {
        parse_catalog("{\n  \"schema_version\": 1,\n  oops\n}", "<test>");
    });
    CHECK(msg.find("<test>:3:") != std::string::npos);
    CHECK(msg.find("parse error") != std::string::npos);
}

TEST_CASE("top-level schema guards") {
    CHECK_THROWS_AS(parse_catalog("[1,2]", "<t>"), SchemaError);
    CHECK_THROWS_AS(parse_catalog(R"({"schema_version": 2, "materials": [], "devices": []})",
                                  "<t>"),
                    SchemaError);
    CHECK_THROWS_AS(parse_catalog(R"({"schema_version": 1, "devices": []})", "<t>"),
                    SchemaError);
    CHECK_THROWS_AS(
        parse_catalog(R"({"schema_version": 1, "materials": [], "devices": [], "x": 1})",
                      "<t>"),
        SchemaError);
}

TEST_CASE("catalog round-trip is lossless") {
    const Catalog& original = bundled_catalog();
    const Catalog reparsed = parse_catalog(catalog_to_json(original), "<round-trip>");
    REQUIRE(reparsed.materials.size() == original.materials.size());
    REQUIRE(reparsed.devices.size() == original.devices.size());
    for (std::size_t i = 0; i < original.materials.size(); ++i) {
        CHECK(reparsed.materials[i].name == original.materials[i].name);
        CHECK(reparsed.materials[i].fermi_velocity == original.materials[i].fermi_velocity);
        CHECK(reparsed.materials[i].gap == original.materials[i].gap);
    }
    for (std::size_t i = 0; i < original.devices.size(); ++i) {
        const Device& a = reparsed.devices[i];
        const Device& b = original.devices[i];
        CHECK(a.name == b.name);
        CHECK(a.material_ref == b.material_ref);
        CHECK(a.loop_length == b.loop_length);
        CHECK(a.persistent_current_difference == b.persistent_current_difference);
        CHECK(a.enclosed_area == b.enclosed_area);
        CHECK(a.wire_cross_section == b.wire_cross_section);
        CHECK(a.enclosed_area_provenance == b.enclosed_area_provenance);
    }
    // a second round trip is byte-stable
    CHECK(catalog_to_json(reparsed) == catalog_to_json(original));
}

TEST_CASE("load_catalog: missing file") {
    CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), SchemaError);
}

TEST_CASE("catalog lookups reject unknown names") {
    CHECK_THROWS_AS(bundled_catalog().material("unobtainium"), ValidationError);
    CHECK_THROWS_AS(bundled_catalog().device("nowhere"), ValidationError);
}
