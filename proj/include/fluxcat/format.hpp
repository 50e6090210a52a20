#pragma once

#include <string>
#include <vector>

#include "fluxcat/device.hpp"

namespace fluxcat {

/// Deterministic human formatting for tables: fixed "%.*g"-style significant
/// figures, ASCII SI prefixes, no locale dependence.

/// x at `digits` significant figures ("2.02e+06" -> "2.02e6" style trimming).
std::string format_sig(double x, int digits = 3);

/// Value with an SI prefix and unit, 3 significant figures: 9e-7 with unit
/// "A" renders as "900 nA". Prefixes outside [1e-18, 1e18) fall back to
/// scientific notation.
std::string format_si(double x, const std::string& unit, int digits = 3);

/// Display policy for cat-size counts: nearest integer (matches published
/// table entries like 42); raw values surface separately.
std::string format_count(double x);

/// "low-high" per endpoint, or the single value when the range is a scalar.
std::string format_range_sig(const ValueRange& range, int digits = 3);
std::string format_range_count(const ValueRange& range);
std::string format_range_si(const ValueRange& range, const std::string& unit, int digits = 3);

/// Left-aligned fixed-width text table with a header row.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace fluxcat
