#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace h3lab {

/// Rounds half away from zero at `decimals` places. Inputs are
/// non-negative in practice, where this is plain half-up.
double round_half_up(double value, int decimals);

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

/// Fixed-point text with exactly `decimals` places.
std::string format_fixed(double value, int decimals);

/// Throws ParameterError unless the whole string is a finite number.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace h3lab
