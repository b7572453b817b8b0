#include "flowtime/equilibrium.hpp"

#include <algorithm>

#include "flowtime/errors.hpp"
#include "flowtime/quickest.hpp"

namespace flowtime {

namespace {

Rat queue_of(const std::map<std::string, Rat>& queues, const std::string& id) {
  auto it = queues.find(id);
  return it == queues.end() ? Rat(0) : it->second;
}

}  // namespace

LabelState compute_labels(const Network& net,
                          const std::map<std::string, Rat>& queues,
                          const Rat& theta) {
  for (const auto& [id, q] : queues) {
    if (q.sign() < 0)
      throw DomainError("negative queue on edge '" + id + "'");
    if (!net.find_edge(id))
      throw DomainError("queue on unknown edge '" + id + "'");
  }
  std::map<std::string, Rat> label;
  std::map<std::string, bool> known;
  for (const auto& n : net.nodes) known[n] = false;
  label[net.source] = theta;
  known[net.source] = true;
  int rounds = static_cast<int>(net.nodes.size());
  for (int r = 0; r + 1 < rounds; ++r) {
    bool changed = false;
    for (const auto& e : net.edges) {
      if (!known[e.tail]) continue;
      Rat cand = label[e.tail] + e.delay + queue_of(queues, e.id);
      if (!known[e.head] || cand < label[e.head]) {
        label[e.head] = cand;
        known[e.head] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (const auto& n : net.nodes)
    if (!known[n])
      throw InternalError("node '" + n + "' unreachable during label computation");
  LabelState st;
  st.theta = theta;
  st.labels = std::move(label);
  return st;
}

std::vector<std::string> shortest_path_network(const Network& net,
                                               const LabelState& state,
                                               const std::map<std::string, Rat>& queues) {
  std::vector<std::string> tight;
  bool sink_attained = net.sink == net.source;
  for (const auto& e : net.edges) {
    Rat through = state.labels.at(e.tail) + e.delay + queue_of(queues, e.id);
    if (through == state.labels.at(e.head)) {
      tight.push_back(e.id);
      if (e.head == net.sink) sink_attained = true;
    }
  }
  if (!sink_attained)
    throw InternalError("sink label not attained by any tight edge");
  return tight;
}

Event next_event(const Network& net, const Phase& phase) {
  const Rat& theta0 = phase.theta_start;
  Rat theta_r = net.demand / net.inflow_rate;
  Event best;
  best.kind = EventKind::Terminal;
  best.theta = theta_r;

  auto consider = [&](EventKind kind, const std::string& edge, const Rat& theta) {
    if (theta <= theta0)
      throw InternalError("event on edge '" + edge + "' does not advance time");
    // Departures stop at theta_r; anything due exactly then never matters.
    if (theta >= theta_r) return;
    if (theta > best.theta) return;
    if (theta < best.theta) {
      best.kind = kind;
      best.edge = edge;
      best.theta = theta;
      return;
    }
    int a = static_cast<int>(kind), b = static_cast<int>(best.kind);
    if (a < b || (a == b && edge < best.edge)) {
      best.kind = kind;
      best.edge = edge;
    }
  };

  std::map<std::string, bool> is_tight;
  for (const auto& id : phase.shortest_edges) is_tight[id] = true;

  for (const auto& e : net.edges) {
    if (is_tight.count(e.id)) {
      // Queue depletion. Only a positive queue shrinking at a negative
      // effective slope can end the phase.
      Rat q0 = queue_of(phase.queues_start, e.id);
      Rat slope = phase.queue_slopes.at(e.id);
      if (q0.sign() > 0 && slope.sign() < 0)
        consider(EventKind::Queue, e.id, theta0 + q0 / -slope);
    } else {
      // A slack edge joins the shortest-path network when its gap closes.
      // Gaps only matter while strictly shrinking; a gap that would close
      // exactly at the current theta was tight already, contradiction.
      Rat gap = phase.labels_start.at(e.tail) + e.delay - phase.labels_start.at(e.head);
      Rat drift = phase.label_slopes.at(e.tail) - phase.label_slopes.at(e.head);
      if (gap.sign() < 0)
        throw InternalError("negative slack on edge '" + e.id + "'");
      if (gap.sign() == 0)
        throw InternalError("edge '" + e.id + "' is tight but not in the phase");
      if (drift.sign() < 0)
        consider(EventKind::Path, e.id, theta0 + gap / -drift);
    }
  }
  Rat lt_slope = phase.label_slopes.at(net.sink);
  best.tau = phase.labels_start.at(net.sink) + lt_slope * (best.theta - theta0);
  return best;
}

namespace {

// Max flow value of the tight subgraph (capped by the inflow rate), reported
// per phase as a lower-bound diagnostic on the sink rate.
Rat tight_cut_capacity(const Network& net, const std::vector<std::string>& tight) {
  Network sub;
  sub.nodes = net.nodes;
  sub.source = net.source;
  sub.sink = net.sink;
  sub.inflow_rate = net.inflow_rate;
  sub.demand = net.demand;
  std::map<std::string, bool> keep;
  for (const auto& id : tight) keep[id] = true;
  for (const auto& e : net.edges)
    if (keep.count(e.id)) sub.edges.push_back(e);
  return max_flow_value(sub);
}

}  // namespace

EquilibriumTrace simulate_equilibrium(const Network& net, int phase_cap) {
  if (phase_cap <= 0)
    phase_cap = 10 * static_cast<int>(net.edges.size() * net.edges.size());
  if (phase_cap <= 0) phase_cap = 10;

  EquilibriumTrace trace;
  trace.inflow_rate = net.inflow_rate;
  trace.demand = net.demand;

  Rat theta(0);
  Rat theta_r = net.demand / net.inflow_rate;
  std::map<std::string, Rat> queues;
  for (const auto& e : net.edges) queues[e.id] = Rat(0);

  LabelState state = compute_labels(net, queues, theta);
  trace.first_arrival = state.labels.at(net.sink);
  Rat prev_sink_rate(0);
  const std::map<std::string, Rat>* hint = nullptr;

  while (true) {
    if (static_cast<int>(trace.phases.size()) >= phase_cap)
      throw SolverError("phase cap of " + std::to_string(phase_cap) +
                        " reached before the terminal event");

    Phase ph;
    ph.index = static_cast<int>(trace.phases.size()) + 1;
    ph.theta_start = theta;
    ph.tau_start = state.labels.at(net.sink);
    ph.labels_start = state.labels;
    ph.queues_start = queues;
    ph.shortest_edges = shortest_path_network(net, state, queues);

    std::map<std::string, bool> tight;
    for (const auto& id : ph.shortest_edges) tight[id] = true;
    for (const auto& e : net.edges)
      if (queues.at(e.id).sign() > 0) {
        if (!tight.count(e.id))
          throw InternalError("queued edge '" + e.id +
                              "' left the shortest-path network");
        ph.queued_edges.push_back(e.id);
      }

    ThinFlowProblem tp;
    tp.nodes = net.nodes;
    tp.source = net.source;
    tp.sink = net.sink;
    tp.inflow = net.inflow_rate;
    for (const auto& e : net.edges)
      if (tight.count(e.id))
        tp.edges.push_back({e.id, e.tail, e.head, e.capacity,
                            queues.at(e.id).sign() > 0});
    ThinFlowResult tf = solve_thin_flow(tp, hint);
    ph.rate_flow = tf.rate_flow;
    ph.label_slopes = tf.label_slopes;

    for (const auto& e : net.edges) {
      if (!tight.count(e.id)) continue;
      Rat drift = ph.label_slopes.at(e.head) - ph.label_slopes.at(e.tail);
      if (queues.at(e.id).sign() > 0)
        ph.queue_slopes[e.id] = drift;  // may be negative while draining
      else
        ph.queue_slopes[e.id] = max(Rat(0), drift);
    }

    Rat lt_slope = ph.label_slopes.at(net.sink);
    if (lt_slope.sign() <= 0)
      throw InternalError("sink label slope is not positive in phase " +
                          std::to_string(ph.index));
    ph.sink_rate = net.inflow_rate / lt_slope;
    ph.tight_cut_capacity = tight_cut_capacity(net, ph.shortest_edges);
    trace.capacity_deltas[ph.index] = ph.sink_rate - prev_sink_rate;
    prev_sink_rate = ph.sink_rate;

    Event ev = next_event(net, ph);
    ev.index = ph.index;
    ph.theta_end = ev.theta;
    ph.tau_end = ev.tau;

    // Advance the exact snapshot linearly to the event time, then recompute
    // labels from the advanced queues. The two must agree; a mismatch means
    // the phase structure was wrong.
    Rat dt = ev.theta - theta;
    std::map<std::string, Rat> new_labels;
    for (const auto& n : net.nodes)
      new_labels[n] = state.labels.at(n) + ph.label_slopes.at(n) * dt;
    for (const auto& e : net.edges) {
      if (!tight.count(e.id)) continue;
      Rat q = queues.at(e.id) + ph.queue_slopes.at(e.id) * dt;
      if (q.sign() < 0)
        throw InternalError("queue on edge '" + e.id + "' went negative");
      queues[e.id] = q;
    }
    if (ev.kind == EventKind::Queue && queues.at(ev.edge).sign() != 0)
      throw InternalError("queue event on edge '" + ev.edge +
                          "' left a nonzero queue");
    theta = ev.theta;
    state = compute_labels(net, queues, theta);
    if (state.labels != new_labels)
      throw InternalError("advanced labels disagree with recomputation at the "
                          "end of phase " + std::to_string(ph.index));

    trace.phases.push_back(ph);
    trace.events.push_back(ev);
    hint = &trace.phases.back().label_slopes;

    if (ev.kind == EventKind::Terminal) {
      if (theta != theta_r)
        throw InternalError("terminal event off the departure horizon");
      trace.completion_time = ev.tau;
      break;
    }
  }
  return trace;
}

std::vector<CurveSegment> arrival_curve(const EquilibriumTrace& trace) {
  std::vector<CurveSegment> out;
  for (const auto& ph : trace.phases)
    out.push_back({ph.tau_start, ph.tau_end, ph.sink_rate});
  return out;
}

}  // namespace flowtime
