#include "fpsearch/format.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fpsearch {

std::string format_decimal(double x, int significant) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? "0" : fmt::format("{}", x);
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::max(0, significant - 1 - exponent);
  return fmt::format("{:.{}f}", x, decimals);
}

std::string format_csv(double x) {
  if (x == 0.0) return "0";
  return fmt::format("{:.12g}", x);
}

}  // namespace fpsearch
