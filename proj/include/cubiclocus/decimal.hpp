#pragma once

#include <string>

#include "cubiclocus/types.hpp"

namespace cubiclocus {

// Exact decimal rendering of a rational to the given number of significant
// digits, round-half-even. Digits come from integer arithmetic on the
// numerator/denominator, never from binary floats.
std::string to_decimal(const Rat& x, int significant_digits);

// Truncated decimal expansion to the given significant digits (the paper's
// "0.993782..." style prefixes).
std::string decimal_prefix(const Rat& x, int significant_digits);

}  // namespace cubiclocus
