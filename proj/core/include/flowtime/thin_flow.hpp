#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowtime/rational.hpp"

namespace flowtime {

// Edge of the tight (shortest-path) subgraph at a phase start. `queued`
// marks edges carrying a strictly positive queue.
struct TfEdge {
  std::string id;
  std::string tail;
  std::string head;
  Rat capacity;
  bool queued = false;
};

struct ThinFlowProblem {
  std::vector<std::string> nodes;   // finite-label nodes, topologically sortable
  std::vector<TfEdge> edges;        // sorted by id
  std::string source;
  std::string sink;
  Rat inflow;                       // value the rate flow must carry
};

// Rate flow and label slopes for one phase. rate_flow covers every problem
// edge (zero off the flow-carrying core); label_slopes covers every node.
struct ThinFlowResult {
  std::map<std::string, Rat> rate_flow;
  std::map<std::string, Rat> label_slopes;
};

struct ThinFlowCheck {
  bool ok = false;
  std::vector<std::string> violations;
};

/**
 * Solves for a rate flow of value `inflow` and node label slopes with
 * source slope 1 such that, per edge (v,w):
 *   queued:              slope(w) = rate/capacity
 *   unqueued, rate > 0:  slope(w) = max(slope(v), rate/capacity)
 *   unqueued, rate = 0:  slope(w) <= slope(v)
 * plus min-attainment at every node reachable on the flow-carrying core
 * (some incoming edge realizes the slope), which pins the physical label
 * derivative. Strategy: water-filling fixed-point iteration proposes sign
 * patterns of slope(w) vs slope(v); each pattern contracts "=" edges into
 * plateaus, yielding an exact linear system in plateau slopes, with flows on
 * "=" edges recovered by a bounded-flow feasibility step. Falls back to ring
 * search around proposals and then exhaustive pattern enumeration with
 * pruning. Every returned solution passes verify_thin_flow. Throws
 * SolverError when the search space is exhausted.
 *
 * `label_hint` primes the iteration (typically the previous phase's slopes).
 */
ThinFlowResult solve_thin_flow(const ThinFlowProblem& p,
                               const std::map<std::string, Rat>* label_hint = nullptr);

// Independent re-check of the conditions above (value, conservation,
// nonnegativity, per-edge slope relations). Collects human-readable
// violations instead of throwing.
ThinFlowCheck verify_thin_flow(const ThinFlowProblem& p, const ThinFlowResult& r);

}  // namespace flowtime
