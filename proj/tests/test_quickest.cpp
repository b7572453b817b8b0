#include "doctest.h"

#include <map>

#include "fixtures.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/quickest.hpp"

using namespace flowtime;

namespace {

// Sum of augmentation values per distinct path delay.
std::map<std::string, Rat> value_by_delay(const std::vector<Breakpoint>& bps) {
  std::map<std::string, Rat> out;
  for (const auto& b : bps) out[b.delay.str()] += b.value;
  return out;
}

}  // namespace

TEST_SUITE("quickest") {

TEST_CASE("min cost flow on the single link") {
  MinCostResult r = min_cost_flow(fx::link(), Rat(1));
  CHECK(r.flow.value == Rat(1));
  CHECK(r.flow.at("e1") == Rat(1));
  REQUIRE(r.breakpoints.size() == 1);
  CHECK(r.breakpoints[0].delay == Rat(1));
  CHECK(r.breakpoints[0].value == Rat(1));
}

TEST_CASE("min cost flow fills cheap routes first") {
  MinCostResult r = min_cost_flow(fx::branch(), Rat(3));
  CHECK(r.flow.value == Rat(3));
  CHECK(r.flow.at("e1") == Rat(2));
  CHECK(r.flow.at("e2") == Rat(1));
  CHECK(r.flow.at("e3") == Rat(1));
  CHECK(r.flow.at("e4") == Rat(1));

  auto by_delay = value_by_delay(r.breakpoints);
  CHECK(by_delay.at("0") == Rat(1));  // the free route first
  CHECK(by_delay.at("1") == Rat(2));  // then both delay-1 routes
}

TEST_CASE("min cost flow reports infeasible targets") {
  // Every route from the source is exhausted at value 3.
  CHECK_THROWS_AS(min_cost_flow(fx::branch(), Rat(4)), InfeasibleError);
  CHECK(max_flow_value(fx::branch()) == Rat(3));
  // The source rate caps the value even when the cut is wider.
  CHECK(max_flow_value(fx::twin()) == Rat(2));
}

TEST_CASE("decomposition strips paths smallest id first") {
  Network b = fx::branch();
  StaticFlow f = min_cost_flow(b, Rat(3)).flow;
  std::vector<PathFlow> paths = flow_decompose(b, f);
  REQUIRE(paths.size() == 3);
  CHECK(paths[0].edges == std::vector<std::string>{"e1", "e2"});
  CHECK(paths[1].edges == std::vector<std::string>{"e1", "e3"});
  CHECK(paths[2].edges == std::vector<std::string>{"e4"});
  for (const auto& p : paths) CHECK(p.value == Rat(1));
  CHECK(paths[0].delay == Rat(0));
  CHECK(paths[1].delay == Rat(1));
  CHECK(paths[2].delay == Rat(1));

  SUBCASE("edge-wise re-summation returns the input flow") {
    std::map<std::string, Rat> sum;
    for (const auto& p : paths)
      for (const auto& e : p.edges) sum[e] += p.value;
    for (const auto& e : b.edges) CHECK(sum[e.id] == f.at(e.id));
  }
}

TEST_CASE("decomposition rejects infeasible flows") {
  Network b = fx::branch();
  StaticFlow f;
  f.values = {{"e1", Rat(1)}};  // dead-ends at v
  f.value = Rat(1);
  CHECK_THROWS_AS(flow_decompose(b, f), InfeasibleError);
}

TEST_CASE("dynamic value is piecewise linear in the horizon") {
  auto bps = min_cost_flow(fx::branch(), Rat(3)).breakpoints;
  CHECK(max_dynamic_value(bps, Rat(1)) == Rat(1));
  CHECK(max_dynamic_value(bps, Rat(5, 2)) == Rat(11, 2));
  CHECK(max_dynamic_value(bps, Rat(0)) == Rat(0));
  CHECK_THROWS_AS(max_dynamic_value(bps, Rat(-1)), DomainError);
}

TEST_CASE("quickest horizon closed forms") {
  QuickestFlowPlan link = quickest_flow(fx::link());
  CHECK(link.horizon == Rat(3));  // value(T) = T - 1 meets demand 2
  CHECK(link.static_flow.value == Rat(1));

  QuickestFlowPlan branch = quickest_flow(fx::branch());
  CHECK(branch.horizon == Rat(5, 2));  // value(T) = 3T - 2 meets 11/2
  CHECK(branch.static_flow.at("e1") == Rat(2));
  CHECK(branch.static_flow.at("e2") == Rat(1));
  CHECK(branch.static_flow.at("e3") == Rat(1));
  CHECK(branch.static_flow.at("e4") == Rat(1));

  QuickestFlowPlan twin = quickest_flow(fx::twin());
  CHECK(twin.horizon == Rat(2));  // value(T) = 2T before the slow edge pays
  CHECK(twin.static_flow.at("fast") == Rat(2));
  CHECK(twin.static_flow.at("slow") == Rat(0));
  REQUIRE(twin.decomposition.size() == 1);
  CHECK(twin.decomposition[0].edges == std::vector<std::string>{"fast"});
}

TEST_CASE("saturation covers every capacity and the source rate") {
  CHECK(is_saturating(fx::branch(), quickest_flow(fx::branch()).static_flow));
  CHECK(is_saturating(fx::link(), quickest_flow(fx::link()).static_flow));
  CHECK(!is_saturating(fx::twin(), quickest_flow(fx::twin()).static_flow));
  CHECK(quickest_flow(fx::branch()).saturating);
  CHECK(!quickest_flow(fx::twin()).saturating);
}

}  // TEST_SUITE
