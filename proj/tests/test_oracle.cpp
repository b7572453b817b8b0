#include "doctest.h"

#include "fixtures.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/instance_gen.hpp"
#include "flowtime/oracle.hpp"
#include "flowtime/quickest.hpp"

using namespace flowtime;

TEST_SUITE("oracle") {

TEST_CASE("cut enumeration matches the solver max flow") {
  CHECK(brute_max_flow(fx::branch()) == Rat(3));
  CHECK(brute_max_flow(fx::link()) == Rat(1));
  CHECK(brute_max_flow(fx::twin()) == Rat(2));  // capped by the source rate
  CHECK(brute_max_flow(fx::branch()) == max_flow_value(fx::branch()));
}

TEST_CASE("vertex enumeration recovers min costs") {
  auto c3 = brute_min_cost(fx::branch(), Rat(3));
  REQUIRE(c3.has_value());
  CHECK(*c3 == Rat(2));  // e3 and e4 each carry 1 at delay 1

  auto c1 = brute_min_cost(fx::branch(), Rat(1));
  REQUIRE(c1.has_value());
  CHECK(*c1 == Rat(0));  // the free route alone

  CHECK(!brute_min_cost(fx::branch(), Rat(4)).has_value());
}

TEST_CASE("value by horizon and smallest sufficient horizon") {
  CHECK(brute_max_value(fx::branch(), Rat(5, 2)) == Rat(11, 2));
  CHECK(brute_max_value(fx::branch(), Rat(1)) == Rat(1));
  CHECK(brute_max_value(fx::branch(), Rat(0)) == Rat(0));
  CHECK_THROWS_AS(brute_max_value(fx::branch(), Rat(-1)), DomainError);

  REQUIRE(brute_horizon(fx::branch()).has_value());
  CHECK(*brute_horizon(fx::branch()) == Rat(5, 2));
  CHECK(*brute_horizon(fx::link()) == Rat(3));
  CHECK(*brute_horizon(fx::twin()) == Rat(2));
}

TEST_CASE("the source rate caps enumerated flows") {
  // Two routes worth 2 combined, but the source emits at most 1; the slow
  // route never helps, so the demand of 3 needs a horizon of 3, not the
  // 2 an uncapped enumeration would claim via both routes at once.
  Network n;
  n.nodes = {"s", "t"};
  n.edges = {
      {"a", "s", "t", Rat(1), Rat(0)},
      {"b", "s", "t", Rat(1), Rat(1)},
  };
  n.source = "s";
  n.sink = "t";
  n.inflow_rate = Rat(1);
  n.demand = Rat(3);
  n = validate(n);

  CHECK(brute_max_flow(n) == Rat(1));
  CHECK(brute_max_value(n, Rat(2)) == Rat(2));
  CHECK(*brute_horizon(n) == Rat(3));
  CHECK(quickest_flow(n).horizon == Rat(3));
}

TEST_CASE("enumeration size guard") {
  GenConfig g;
  g.seed = 5;
  g.nodes = 9;
  g.extra_edges = 12;  // 8 spine + 12 extra edges blows the 3^m budget
  Network big = generate_instance(g);
  if (big.edges.size() > 11) {
    CHECK_THROWS_AS(brute_horizon(big), DomainError);
  }
}

TEST_CASE("random instances agree with the solver") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig g;
    g.seed = seed;
    g.nodes = 5;
    g.extra_edges = 2;
    Network n = generate_instance(g);
    CAPTURE(seed);
    CHECK(brute_max_flow(n) == max_flow_value(n));
    auto ref = brute_horizon(n);
    REQUIRE(ref.has_value());
    CHECK(*ref == quickest_flow(n).horizon);
  }
}

}  // TEST_SUITE
