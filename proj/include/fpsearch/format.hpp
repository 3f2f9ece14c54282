#pragma once

#include <string>

namespace fpsearch {

/// Plain decimal (never exponent notation) with `significant` digits.
std::string format_decimal(double x, int significant);

/// CSV cell: 12 significant digits, '.' decimal point, shortest form.
std::string format_csv(double x);

}  // namespace fpsearch
