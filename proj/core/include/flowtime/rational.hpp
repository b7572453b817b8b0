#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace flowtime {

/**
 * Exact rational number. Thin value wrapper over GMP's mpq_class that keeps
 * every stored value in lowest terms with a positive denominator, parses and
 * prints the "p/q" wire form, and exposes just the arithmetic the engine
 * needs. All engine math runs on this type; doubles appear only in reports
 * and in the fluid oracle.
 */
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}                       // NOLINT: implicit by design
  Rat(long n, long d);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p/q", "p", or "-p/q" with arbitrary-precision integers.
  static Rat parse(const std::string& text);

  std::string str() const;       // "p/q", or "p" when the denominator is 1
  std::string str_explicit() const;  // always "p/q"
  double to_double() const { return v_.get_d(); }

  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

}  // namespace flowtime
