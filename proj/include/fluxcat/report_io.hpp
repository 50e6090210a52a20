#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fluxcat/device.hpp"
#include "fluxcat/lattice.hpp"

namespace fluxcat {

/// Report serialization. JSON carries raw full-precision values (the
/// emitter writes shortest round-trip decimals, so parse(to_json(r))
/// reproduces every double bit-for-bit); CSV rows carry %.17g.

std::string report_to_json(const CatSizeReport& report, int indent = 2);
CatSizeReport report_from_json(std::string_view text);

std::string reports_to_json(const std::vector<CatSizeReport>& reports, int indent = 2);

/// One row per device per current-difference endpoint.
std::string reports_to_csv(const std::vector<CatSizeReport>& reports);

std::string lattice_results_to_json(const std::vector<LatticeResult>& results,
                                    int indent = 2);
std::string lattice_results_to_csv(const std::vector<LatticeResult>& results);

}  // namespace fluxcat
