#include "graphmine/util.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "graphmine/errors.hpp"

namespace graphmine {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(path);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Precondition("quantile of empty sequence");
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p + 1.0;
  double lo = std::floor(h);
  if (lo < 1.0) lo = 1.0;
  if (lo > static_cast<double>(n)) lo = static_cast<double>(n);
  const auto k = static_cast<std::size_t>(lo);
  if (k >= n) return sorted[n - 1];
  const double frac = h - lo;
  return sorted[k - 1] + frac * (sorted[k] - sorted[k - 1]);
}

}  // namespace graphmine
