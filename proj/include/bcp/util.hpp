#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcp {

// Calendar date. Only well-formed dates are ever stored (see parse_date).
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;
};

bool is_valid_date(int y, int m, int d);

// Accepts "YYYY-MM-DD", "YYYY-MM" (day -> 1) and "YYYY" (month/day -> 1).
std::optional<Date> parse_date(std::string_view s);

std::string format_date(const Date& d);

// d plus a whole number of years; Feb 29 maps to Feb 28 in non-leap years.
Date add_years(const Date& d, int years);

// Shortest round-trip decimal form (via std::to_chars).
std::string fmt_double(double v);

std::string trim(std::string_view s);

// Trim, collapse internal whitespace runs to one space, ASCII-lowercase.
std::string normalize_name(std::string_view s);

// DOIs compare case-insensitively after trimming.
std::string normalize_doi(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Minimal CSV with RFC-style quoting (fields containing , " or newline are quoted).
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_parse_line(std::string_view line);

void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace bcp
