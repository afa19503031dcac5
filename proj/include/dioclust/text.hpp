#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dioclust {

/// Shortest decimal that parses back to the same double; "inf" for +infinity.
std::string format_number(double value);

/// Strict parse of a whole token. Accepts "inf"/"infinity" in any case.
/// Returns nullopt on garbage, trailing characters or NaN.
std::optional<double> parse_number(std::string_view token);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char delim);

}  // namespace dioclust
