#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowtime/network.hpp"
#include "flowtime/rational.hpp"
#include "flowtime/thin_flow.hpp"

namespace flowtime {

/**
 * Earliest-arrival labels for mass leaving the source at time theta. The
 * queue map is indexed in the source frame: queues[e] is the queue delay the
 * theta-particle meets on edge e, i.e. the queue at wall time label(tail(e)).
 */
struct LabelState {
  Rat theta;
  std::map<std::string, Rat> labels;
};

// Bellman-Ford style relaxation (n-1 rounds over the fixed edge order).
// Every node of a validated network is reachable, so all labels are finite.
LabelState compute_labels(const Network& net,
                          const std::map<std::string, Rat>& queues,
                          const Rat& theta);

// Edge ids (sorted) of the tight edges: label(head) == label(tail) + delay +
// queue. Throws InternalError if the sink has no tight incoming edge.
std::vector<std::string> shortest_path_network(const Network& net,
                                               const LabelState& state,
                                               const std::map<std::string, Rat>& queues);

enum class EventKind { Queue, Path, Terminal };

struct Event {
  int index = 0;          // 1-based; events end phases
  EventKind kind = EventKind::Terminal;
  std::string edge;       // empty for terminal
  Rat theta;
  Rat tau;                // sink label at theta
};

struct Phase {
  int index = 0;          // 1-based
  Rat theta_start, theta_end;
  Rat tau_start, tau_end;
  std::vector<std::string> shortest_edges;          // sorted
  std::vector<std::string> queued_edges;            // sorted, subset of shortest
  std::map<std::string, Rat> rate_flow;             // per tight edge
  std::map<std::string, Rat> label_slopes;          // per node
  std::map<std::string, Rat> queue_slopes;          // per tight edge, source frame
  Rat sink_rate;                                    // inflow / sink label slope
  Rat tight_cut_capacity;   // diagnostic: max flow value of the tight subgraph
  std::map<std::string, Rat> labels_start;          // per node
  std::map<std::string, Rat> queues_start;          // per edge, source frame
};

struct EquilibriumTrace {
  std::vector<Phase> phases;
  std::vector<Event> events;          // events[i] closes phases[i]
  Rat completion_time;                // sink label when the last mass departs
  Rat first_arrival;                  // sink label at theta = 0
  Rat inflow_rate;
  Rat demand;
  std::map<int, Rat> capacity_deltas; // phase index -> sink_rate step (rate 0 before phase 1)
};

// Earliest phase-ending event after phase.theta_start: a queue draining to
// zero, a non-tight edge becoming tight (only while its gap strictly
// shrinks), or the terminal time demand/inflow_rate. Ties break by kind
// (queue < path < terminal), then edge id.
Event next_event(const Network& net, const Phase& phase);

/**
 * Phase-by-phase simulation: compute labels, take the tight subgraph and the
 * queued subset, solve the per-phase rate flow, advance labels and queues
 * linearly to the next event, re-derive everything from the exact snapshot.
 * Runs until the terminal event; throws SolverError past `phase_cap` phases
 * (default 10 |E|^2 when 0).
 */
EquilibriumTrace simulate_equilibrium(const Network& net, int phase_cap = 0);

struct CurveSegment {
  Rat tau_start, tau_end;  // arrivals on (tau_start, tau_end]
  Rat rate;
};

// Sink arrival rate over time; one segment per phase, mass sums to demand.
std::vector<CurveSegment> arrival_curve(const EquilibriumTrace& trace);

}  // namespace flowtime
