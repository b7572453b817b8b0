#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowtime/network.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

// Static edge flow. `value` is the amount leaving the source.
struct StaticFlow {
  std::map<std::string, Rat> values;
  Rat value;

  Rat at(const std::string& edge_id) const {
    auto it = values.find(edge_id);
    return it == values.end() ? Rat(0) : it->second;
  }
};

// One augmentation step of the successive-shortest-path run. `arcs` is the
// residual path taken (reverse traversals flagged), `delay` the path cost,
// `flow_after` the cumulative edge flow once this step is applied.
struct AugArc {
  std::string edge;
  bool forward = true;
};
struct Breakpoint {
  std::vector<AugArc> arcs;
  Rat value;
  Rat delay;
  std::map<std::string, Rat> flow_after;
};

struct PathFlow {
  std::vector<std::string> edges;
  Rat value;
  Rat delay;
};

struct MinCostResult {
  StaticFlow flow;
  std::vector<Breakpoint> breakpoints;
};

/**
 * Minimum-delay static flow of the given value, computed by successive
 * shortest augmenting paths on the residual network. The source inflow cap
 * is modeled as an internal super-source arc of capacity inflow_rate and
 * delay zero, so feasible values are bounded by min(inflow_rate, min-cut).
 * Among equal-delay augmenting paths the lexicographically smallest edge-id
 * sequence is taken. Throws InfeasibleError (reporting the max feasible
 * value) if `target` exceeds it.
 */
MinCostResult min_cost_flow(const Network& net, const Rat& target);

// Max feasible flow value under the source inflow cap.
Rat max_flow_value(const Network& net);

/**
 * Greedy path stripping of a feasible static flow: repeatedly walk from the
 * source along edges with remaining flow, smallest edge id first, and strip
 * the bottleneck. Yields at most |E| paths. Throws InfeasibleError naming
 * the offending node/edge if the input violates conservation or capacity.
 */
std::vector<PathFlow> flow_decompose(const Network& net, const StaticFlow& flow);

// Value routed by horizon T when each augmentation path sends over
// [0, T - delay]: sum of value * max(0, T - delay). T < 0 is a DomainError.
Rat max_dynamic_value(const std::vector<Breakpoint>& breakpoints, const Rat& T);

struct QuickestFlowPlan {
  StaticFlow static_flow;
  std::vector<PathFlow> decomposition;
  Rat horizon;                         // minimal T routing all demand
  std::vector<Breakpoint> breakpoints; // full max-flow augmentation profile
  bool saturating = false;
};

/**
 * Minimal-horizon routing of the full demand: runs the augmentation profile
 * to exhaustion, inverts the piecewise-linear value function exactly at the
 * demand, and keeps the flow prefix whose path delays lie strictly below the
 * horizon (boundary-delay paths carry no mass). Throws NoRouteError when the
 * max flow value is zero.
 */
QuickestFlowPlan quickest_flow(const Network& net);

// True iff the flow fills every edge capacity and the full source rate.
bool is_saturating(const Network& net, const StaticFlow& flow);

}  // namespace flowtime
