#pragma once

#include <optional>

#include "flowtime/network.hpp"
#include "flowtime/rational.hpp"

namespace flowtime {

/**
 * Reference answers by exhaustive enumeration, kept deliberately separate
 * from the production solvers so the two can disagree in tests. Vertex
 * candidates of the static flow polytope come from fixing each edge to
 * empty, full, or free (3^|E|) and solving the conservation system exactly
 * for the free ones; the source release rate joins the enumeration as one
 * more arc of capacity inflow_rate, so values never exceed what the source
 * can emit. Cuts come from enumerating source-side node subsets. Intended
 * for small instances only (roughly |E| <= 10).
 */

// Max flow value from source to sink, capped by the inflow rate.
Rat brute_max_flow(const Network& net);

// Min cost (flow-weighted delay) of a static flow of the given value;
// nullopt when the value is not feasible.
std::optional<Rat> brute_min_cost(const Network& net, const Rat& value);

// Best temporally repeated value by the given horizon: max over vertex
// flows x of horizon*|x| - cost(x), never negative.
Rat brute_max_value(const Network& net, const Rat& horizon);

// Smallest horizon whose best temporally repeated value reaches the demand;
// nullopt when no flow can be sent at all.
std::optional<Rat> brute_horizon(const Network& net);

}  // namespace flowtime
