#include "flowtime/rational.hpp"

#include <cctype>
#include <ostream>

#include "flowtime/errors.hpp"

namespace flowtime {

Rat::Rat(long n, long d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw DomainError("rational division by zero");
  return Rat(mpq_class(a.v_ / b.v_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text))
      throw ParseError("bad rational literal: \"" + text + "\"");
    return Rat(mpq_class(mpz_class(text)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw ParseError("bad rational literal: \"" + text + "\"");
  mpz_class d(den);
  if (d == 0) throw ParseError("rational literal with zero denominator: \"" + text + "\"");
  mpq_class q(mpz_class(num), d);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::str_explicit() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

}  // namespace flowtime
