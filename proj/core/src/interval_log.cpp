#include "flowtime/interval_log.hpp"

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

// atanh(z) for 0 < z < 1/2 via the odd power series. The partial sum is a
// lower bound; the tail is geometrically dominated, giving the upper bound
// z^(2n+1) / ((2n+1)(1 - z^2)).
RatInterval atanh_interval(const Rat& z, const Rat& width) {
  Rat z2 = z * z;
  Rat term = z;  // z^(2j+1)
  Rat sum(0);
  long j = 0;
  while (true) {
    sum = sum + term / Rat(2 * j + 1);
    term = term * z2;
    ++j;
    Rat tail = term / (Rat(2 * j + 1) * (Rat(1) - z2));
    if (tail <= width) return {sum, sum + tail};
    if (j > 4000)
      throw InternalError("atanh series failed to converge");
  }
}

// ln(x) for x in (1, 2], no argument reduction needed.
RatInterval log_small(const Rat& x, const Rat& width) {
  Rat z = (x - Rat(1)) / (x + Rat(1));  // z in (0, 1/3]
  RatInterval a = atanh_interval(z, width / Rat(2));
  return {Rat(2) * a.lo, Rat(2) * a.hi};
}

RatInterval log2_interval(const Rat& width) {
  return log_small(Rat(2), width);
}

}  // namespace

RatInterval log_interval(const Rat& x, const Rat& width) {
  if (x.sign() <= 0) throw DomainError("log of a nonpositive value");
  if (width.sign() <= 0) throw DomainError("nonpositive interval width");
  if (x == Rat(1)) return {Rat(0), Rat(0)};
  if (x < Rat(1)) {
    Rat inv = Rat(1) / x;
    RatInterval r = log_interval(inv, width);
    return {-r.hi, -r.lo};
  }
  // Halve into (1, 2], accumulating k * ln 2.
  Rat y = x;
  long k = 0;
  while (y > Rat(2)) {
    y = y / Rat(2);
    ++k;
  }
  RatInterval base = log_small(y, width / Rat(2));
  if (k == 0) return base;
  RatInterval l2 = log2_interval(width / Rat(2 * k));
  return {base.lo + Rat(k) * l2.lo, base.hi + Rat(k) * l2.hi};
}

RatInterval log_interval(const Rat& x) {
  return log_interval(x, Rat(1, 1000000000000L));
}

bool certified_le_log(const Rat& lhs, const Rat& coeff, const Rat& arg) {
  if (coeff.sign() < 0) throw DomainError("negative coefficient");
  if (arg == Rat(1) || coeff.sign() == 0) return lhs.sign() <= 0;
  Rat width(1, 1000000000000L);
  for (int round = 0; round < 6; ++round) {
    RatInterval lg = log_interval(arg, width);
    if (lhs <= coeff * lg.lo) return true;
    if (lhs > coeff * lg.hi) return false;
    width = width * width;  // equality of lhs and coeff*ln(arg) is impossible
  }
  throw SolverError("log comparison failed to separate");
}

Rat euler_lower() { return Rat(271828, 100000); }
Rat euler_upper() { return Rat(271829, 100000); }

}  // namespace flowtime
