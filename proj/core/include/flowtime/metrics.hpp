#pragma once

#include <string>
#include <vector>

#include "flowtime/equilibrium.hpp"
#include "flowtime/network.hpp"
#include "flowtime/quickest.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

// Mass-weighted total arrival time of the equilibrium, integrating tau
// against the sink arrival rate of each phase.
Rat total_delay_equilibrium(const EquilibriumTrace& trace);

// Same aggregate for the temporally repeated quickest flow; path flows with
// delay d send mass at a constant rate arriving on [d, horizon].
Rat total_delay_repeated(const QuickestFlowPlan& plan);

// No schedule moving `demand` by time `horizon` can beat demand*horizon/2:
// at most an inflow_rate*t prefix has arrived by time t, and the quickest
// horizon caps how early the tail can land.
Rat delay_lower_bound(const Rat& demand, const Rat& horizon);

struct PoaSummary {
  Rat time_ratio;          // completion_time / quickest horizon
  Rat delay_ratio_upper;   // d_equilibrium / delay lower bound
  Rat d_equilibrium;
  Rat d_repeated;
  Rat d_lower;
};

PoaSummary poa_summary(const EquilibriumTrace& trace, const QuickestFlowPlan& plan);

// Certified comparisons against the worst-case factor e/(e-1), evaluated at
// a rational upper bracket of e (the factor shrinks as e grows, so passing
// there implies the true bound).
struct BoundCert {
  bool time_bound_holds;   // completion * (e-1) <= horizon * e
  bool delay_bound_holds;  // d_eq * (e-1) <= e * demand * horizon
  Rat euler_used;
};

BoundCert certify_bounds(const Rat& completion, const Rat& horizon,
                         const Rat& d_equilibrium, const Rat& demand);

struct CheckRow {
  std::string id;
  std::string location;
  bool pass = false;
  std::string lhs, rhs;
};

/**
 * Structural invariants of a finished trace, one row per check site:
 * sink-rate reciprocity, arrival progress per phase, mass balances (trace
 * side, and plan side when a plan is given), the certified queue-growth
 * bound, FIFO exit order, queue nonnegativity, label slope signs, strictly
 * increasing arrival times, and queued-implies-tight.
 */
std::vector<CheckRow> run_invariant_suite(const Network& net,
                                          const EquilibriumTrace& trace,
                                          const QuickestFlowPlan* plan = nullptr);

}  // namespace flowtime
