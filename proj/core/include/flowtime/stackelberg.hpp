#pragma once

#include "flowtime/equilibrium.hpp"
#include "flowtime/metrics.hpp"
#include "flowtime/network.hpp"
#include "flowtime/quickest.hpp"

namespace flowtime {

// Replace every capacity by the static flow value on that edge; zero-flow
// edges drop out during revalidation. Delays, rates and demand are kept.
// Throws ValidationError if the flow is not feasible for the network.
Network reduce_capacities(const Network& net, const StaticFlow& flow);

struct StackelbergResult {
  Network reduced;
  QuickestFlowPlan plan_before;   // on the input network
  QuickestFlowPlan plan_after;    // on the reduced network
  EquilibriumTrace eq_before;
  EquilibriumTrace eq_after;
  PoaSummary poa_before;
  PoaSummary poa_after;
  BoundCert cert_before;
  BoundCert cert_after;
  bool saturating_before = false;  // input quickest flow already fills the network
  bool horizon_preserved = false;  // reduction kept the quickest horizon intact
};

/**
 * Full coordination pipeline: quickest flow and equilibrium on the input,
 * capacity reduction to the quickest static flow, then the same analysis on
 * the reduced network. After reduction the quickest flow saturates by
 * construction, which is the regime where the e/(e-1) guarantees on
 * completion time and total delay are certified.
 */
StackelbergResult stackelberg_pipeline(const Network& net, int phase_cap = 0);

}  // namespace flowtime
