#include "doctest.h"

#include <cmath>

#include "flowtime/errors.hpp"
#include "flowtime/interval_log.hpp"

using namespace flowtime;

TEST_SUITE("interval_log") {

TEST_CASE("brackets enclose the true logarithm") {
  for (long num : {2L, 3L, 5L, 7L, 100L}) {
    RatInterval iv = log_interval(Rat(num));
    double truth = std::log(static_cast<double>(num));
    CHECK(iv.lo.to_double() <= truth);
    CHECK(iv.hi.to_double() >= truth);
    CHECK(iv.hi - iv.lo <= Rat(1, 1000000000000L));
    CHECK(iv.lo <= iv.hi);
  }
}

TEST_CASE("log of one is exactly zero") {
  RatInterval iv = log_interval(Rat(1));
  CHECK(iv.lo == Rat(0));
  CHECK(iv.hi == Rat(0));
}

TEST_CASE("arguments below one go negative by inversion") {
  RatInterval iv = log_interval(Rat(1, 2));
  CHECK(iv.hi.sign() < 0);
  double truth = std::log(0.5);
  CHECK(iv.lo.to_double() <= truth);
  CHECK(iv.hi.to_double() >= truth);
}

TEST_CASE("width request is honored") {
  Rat w(1, 1000000);
  RatInterval iv = log_interval(Rat(7), w);
  CHECK(iv.hi - iv.lo <= w);
}

TEST_CASE("log rejects nonpositive arguments") {
  CHECK_THROWS_AS(log_interval(Rat(0)), DomainError);
  CHECK_THROWS_AS(log_interval(Rat(-3)), DomainError);
}

TEST_CASE("certified comparisons never pass by luck") {
  // 5/2 <= 3 ln 3 = 3.295... holds with room.
  CHECK(certified_le_log(Rat(5, 2), Rat(3), Rat(3)));
  // 10/3 = 3.333... exceeds it.
  CHECK(!certified_le_log(Rat(10, 3), Rat(3), Rat(3)));
  // ln 1 = 0 makes the right side exactly zero.
  CHECK(certified_le_log(Rat(0), Rat(5), Rat(1)));
  CHECK(certified_le_log(Rat(-1), Rat(5), Rat(1)));
  CHECK(!certified_le_log(Rat(1, 1000000), Rat(5), Rat(1)));
  // Nonpositive left sides hold against any log of x >= 1.
  CHECK(certified_le_log(Rat(0), Rat(3), Rat(3)));
  // A zero coefficient collapses the right side.
  CHECK(certified_le_log(Rat(0), Rat(0), Rat(3)));
  CHECK(!certified_le_log(Rat(1), Rat(0), Rat(3)));
}

TEST_CASE("tight certified comparisons separate correctly") {
  // 3 ln 3 = 3.2958368660... Brackets a few digits on each side must still
  // resolve even though they sit close to the transcendental value.
  CHECK(certified_le_log(Rat::parse("32958368/10000000"), Rat(3), Rat(3)));
  CHECK(!certified_le_log(Rat::parse("32958369/10000000"), Rat(3), Rat(3)));
}

TEST_CASE("euler brackets are ordered and tight") {
  CHECK(euler_lower() < euler_upper());
  CHECK(euler_lower().to_double() <= std::exp(1.0));
  CHECK(euler_upper().to_double() >= std::exp(1.0));
  CHECK(euler_upper() - euler_lower() <= Rat(1, 100000));
}

}  // TEST_SUITE
