#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stopmove {

/// Fixed notation with at most 6 fractional digits, trailing zeros and a
/// dangling point trimmed; negative zero prints as "0".
std::string format_number(double v);

/// Shortest decimal text that parses back to exactly v.
std::string format_exact(double v);

/// Parses a complete decimal literal; returns false on trailing garbage,
/// empty input, or a non-finite result.
bool parse_number(std::string_view text, double& out);

/// Splits one CSV line on commas, trimming spaces, tabs and a trailing CR.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace stopmove
