#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// `format_double`, or `NA` when the value is undefined.
std::string format_optional(const std::optional<double>& value);

/// Strict full-string parse; throws std::invalid_argument.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

/// Splits one CSV line (RFC 4180 style quoting). A trailing '\r' is ignored.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

}  // namespace arena
