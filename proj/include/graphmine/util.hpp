#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphmine {

// Shortest decimal string that parses back to the same double (to_chars).
std::string format_double(double v);

// Strict full-string parse; rejects non-finite values and trailing junk.
std::optional<double> parse_double(std::string_view s);

std::string hex16(std::uint64_t v);

std::string read_file(const std::string& path);          // throws IoError
void write_file(const std::string& path, std::string_view content);  // throws IoError

// Inclusive linear-interpolation quantile over sorted values:
// h = (N-1)p + 1 over the 1-based order statistics.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace graphmine
