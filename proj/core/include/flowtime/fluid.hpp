#pragma once

#include <utility>
#include <vector>

#include "flowtime/equilibrium.hpp"
#include "flowtime/network.hpp"

namespace flowtime {

/**
 * Floating-point cross checks of the exact trace. Both run the plain point
 * queue dynamics on a wall clock: a queue drains at edge capacity whenever
 * it is nonempty.
 */

struct ReplayReport {
  double max_queue_deviation = 0;  // in delay units, over all phase ends
  double tolerance = 0;
  bool within_tolerance = false;
};

// Feed each edge the inflow the trace prescribes (rate flow mapped through
// the tail arrival clock), integrate queues with Euler steps of width dt,
// and compare queue delays against the trace at every phase boundary.
ReplayReport replay_trace(const Network& net, const EquilibriumTrace& trace,
                          double dt);

struct FluidResult {
  double completion = 0;
  double first_arrival = 0;
  std::vector<std::pair<double, double>> arrivals;  // (time, mass), time sorted

  // Total mass arrived by time tau.
  double cumulative_at(double tau) const;
};

/**
 * Self-contained approximate equilibrium: departures leave in dt-sized
 * parcels, each released at the midpoint of the window it stands in for;
 * a parcel routes along current shortest routes where the queue on an edge
 * is projected to the parcel's own arrival time at the tail (queues
 * committed by earlier parcels drain at capacity until then). At each node
 * the parcel water-fills across outgoing routes, keeping their projected
 * completion level equal. Converges to the exact arrival curve as dt
 * shrinks.
 */
FluidResult simulate_best_response(const Network& net, double dt);

}  // namespace flowtime
