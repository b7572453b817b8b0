#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "flowtime/equilibrium.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/fluid.hpp"

using namespace flowtime;

TEST_SUITE("fluid") {

TEST_CASE("replay confirms the branch trace") {
  EquilibriumTrace tr = simulate_equilibrium(fx::branch());
  ReplayReport r = replay_trace(fx::branch(), tr, 1e-3);
  CHECK(r.within_tolerance);
  CHECK(r.max_queue_deviation <= r.tolerance);
}

TEST_CASE("replay sees no queues on the single link") {
  EquilibriumTrace tr = simulate_equilibrium(fx::link());
  ReplayReport r = replay_trace(fx::link(), tr, 1e-3);
  CHECK(r.within_tolerance);
  CHECK(r.max_queue_deviation == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("replay flags a fabricated queue slope") {
  EquilibriumTrace tr = simulate_equilibrium(fx::branch());
  // Claim the empty queue on the bypass drains further during phase 1; the
  // simulated dynamics keep it at zero, so the checkpoint must disagree.
  tr.phases[0].queue_slopes["e4"] = Rat(-1);
  ReplayReport r = replay_trace(fx::branch(), tr, 1e-3);
  CHECK(!r.within_tolerance);
}

TEST_CASE("replay rejects nonsense steps") {
  EquilibriumTrace tr = simulate_equilibrium(fx::link());
  CHECK_THROWS_AS(replay_trace(fx::link(), tr, 0.0), DomainError);
  CHECK_THROWS_AS(replay_trace(fx::link(), tr, -0.5), DomainError);
}

TEST_CASE("independent router reproduces the link curve") {
  FluidResult r = simulate_best_response(fx::link(), 1e-3);
  // First parcel leaves at the midpoint of its window.
  CHECK(r.first_arrival == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.completion == doctest::Approx(3.0).epsilon(1e-2));
  CHECK(r.cumulative_at(3.01) == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(r.cumulative_at(2.0) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("independent router reproduces the branch curve") {
  FluidResult r = simulate_best_response(fx::branch(), 1e-4);
  // Exact curve: rate 1 to 3/2, rate 2 to 2, rate 3 to 3.
  CHECK(std::fabs(r.cumulative_at(3.0 + 1e-9) - 5.5) <= 5e-3);
  CHECK(std::fabs(r.cumulative_at(2.0) - 2.5) <= 5e-2);
  CHECK(std::fabs(r.cumulative_at(1.5) - 1.5) <= 5e-2);
  CHECK(r.completion == doctest::Approx(3.0).epsilon(1e-2));
  CHECK(r.first_arrival == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("arrival masses account for the demand") {
  FluidResult r = simulate_best_response(fx::twin(), 1e-3);
  double total = 0;
  for (const auto& [t, m] : r.arrivals) total += m;
  CHECK(total == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.completion == doctest::Approx(2.0).epsilon(1e-2));
}

}  // TEST_SUITE
