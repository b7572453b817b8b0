#pragma once

#include "flowtime/rational.hpp"

namespace flowtime {

struct RatInterval {
  Rat lo, hi;
};

// Enclosure of ln(x) with rational endpoints and hi - lo <= width.
// Exact {0, 0} when x == 1; throws DomainError for x <= 0.
RatInterval log_interval(const Rat& x, const Rat& width);
RatInterval log_interval(const Rat& x);  // width 1e-12

// Certified comparison lhs <= coeff * ln(arg), coeff >= 0. Narrows the
// enclosure until it separates; equality is only possible at arg == 1,
// which is handled exactly.
bool certified_le_log(const Rat& lhs, const Rat& coeff, const Rat& arg);

// Rational brackets of Euler's number, 2.71828 < e < 2.71829. The upper
// endpoint is the conservative choice for bounds scaling by e/(e-1).
Rat euler_lower();
Rat euler_upper();

}  // namespace flowtime
