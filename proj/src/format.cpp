#include "fluxcat/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fluxcat {

std::string format_sig(double x, int digits) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
    std::string s = buffer;
    // strip padded exponents: 2.02e+06 -> 2.02e6
    const auto e = s.find('e');
    if (e != std::string::npos) {
        std::string mantissa = s.substr(0, e);
        std::string exponent = s.substr(e + 1);
        const bool negative = !exponent.empty() && exponent[0] == '-';
        if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-'))
            exponent.erase(0, 1);
        while (exponent.size() > 1 && exponent[0] == '0') exponent.erase(0, 1);
        s = mantissa + "e" + (negative ? "-" : "") + exponent;
    }
    return s;
}

std::string format_si(double x, const std::string& unit, int digits) {
    static const struct {
        double factor;
        const char* prefix;
    } kPrefixes[] = {
        {1e18, "E"}, {1e15, "P"}, {1e12, "T"}, {1e9, "G"}, {1e6, "M"}, {1e3, "k"},
        {1.0, ""},   {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}, {1e-12, "p"},
        {1e-15, "f"}, {1e-18, "a"},
    };
    if (x == 0.0) return "0 " + unit;
    const double mag = std::fabs(x);
    for (const auto& p : kPrefixes) {
        if (mag >= p.factor && mag < p.factor * 1e3)
            return format_sig(x / p.factor, digits) + " " + p.prefix + unit;
    }
    return format_sig(x, digits) + " " + unit;
}

std::string format_count(double x) {
    char buffer[48];
    if (std::fabs(x) < 1e15) {
        std::snprintf(buffer, sizeof buffer, "%.0f", x);
        return buffer;
    }
    return format_sig(x, 3);
}

std::string format_range_sig(const ValueRange& range, int digits) {
    if (range.is_scalar()) return format_sig(range.low, digits);
    return format_sig(range.low, digits) + "-" + format_sig(range.high, digits);
}

std::string format_range_count(const ValueRange& range) {
    if (range.is_scalar()) return format_count(range.low);
    return format_count(range.low) + "-" + format_count(range.high);
}

std::string format_range_si(const ValueRange& range, const std::string& unit, int digits) {
    if (range.is_scalar()) return format_si(range.low, unit, digits);
    // shared prefix reads better for ranges: "2-3 uA"
    const double mag = std::fabs(range.high);
    static const struct {
        double factor;
        const char* prefix;
    } kPrefixes[] = {
        {1e18, "E"}, {1e15, "P"}, {1e12, "T"}, {1e9, "G"}, {1e6, "M"}, {1e3, "k"},
        {1.0, ""},   {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}, {1e-12, "p"},
        {1e-15, "f"}, {1e-18, "a"},
    };
    for (const auto& p : kPrefixes) {
        if (mag >= p.factor && mag < p.factor * 1e3)
            return format_sig(range.low / p.factor, digits) + "-" +
                   format_sig(range.high / p.factor, digits) + " " + p.prefix + unit;
    }
    return format_range_sig(range, digits) + " " + unit;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string& cell = c < row.size() ? row[c] : std::string();
            out << cell;
            if (c + 1 < width.size())
                out << std::string(width[c] - cell.size() + 2, ' ');
        }
        out << '\n';
    };
    emit(header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c)
        total += width[c] + (c + 1 < width.size() ? 2 : 0);
    out << std::string(total, '-') << '\n';
    for (const auto& row : rows) emit(row);
    return out.str();
}

}  // namespace fluxcat
