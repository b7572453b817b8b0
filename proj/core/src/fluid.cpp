#include "flowtime/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

struct Window {
  double t0, t1, rate;
};

}  // namespace

ReplayReport replay_trace(const Network& net, const EquilibriumTrace& trace,
                          double dt) {
  if (!(dt > 0)) throw DomainError("dt must be positive");
  size_t m = net.edges.size();
  std::map<std::string, size_t> eix;
  for (size_t i = 0; i < m; ++i) eix[net.edges[i].id] = i;

  std::vector<std::vector<Window>> windows(m);
  std::vector<std::vector<std::pair<double, double>>> checkpoints(m);
  double max_rate = 1.0;

  for (size_t pi = 0; pi < trace.phases.size(); ++pi) {
    const Phase& ph = trace.phases[pi];
    double d_theta = (ph.theta_end - ph.theta_start).to_double();
    for (const auto& [eid, x] : ph.rate_flow) {
      const Edge& e = net.edges[eix.at(eid)];
      Rat lv = ph.labels_start.at(e.tail);
      Rat lvs = ph.label_slopes.at(e.tail);
      if (x.sign() > 0) {
        if (lvs.sign() <= 0)
          throw InternalError("flow through a frozen tail clock on edge '" +
                              eid + "'");
        double rate = (x / lvs).to_double();
        double t0 = lv.to_double();
        windows[eix.at(eid)].push_back({t0, t0 + lvs.to_double() * d_theta, rate});
        max_rate = std::max(max_rate, rate / e.capacity.to_double());
      }
    }
    // Expected queue delay at the end of the phase, sampled at the wall
    // time when the boundary departure reaches the tail.
    std::map<std::string, Rat> q_end = ph.queues_start;
    for (const auto& [eid, qs] : ph.queue_slopes)
      q_end[eid] = q_end[eid] + qs * (ph.theta_end - ph.theta_start);
    for (size_t i = 0; i < m; ++i) {
      const Edge& e = net.edges[i];
      Rat tail_wall = ph.labels_start.at(e.tail) +
                      ph.label_slopes.at(e.tail) * (ph.theta_end - ph.theta_start);
      checkpoints[i].push_back({tail_wall.to_double(), q_end.at(e.id).to_double()});
    }
  }

  ReplayReport rep;
  rep.tolerance = 5.0 * dt * max_rate;

  for (size_t i = 0; i < m; ++i) {
    const Edge& e = net.edges[i];
    double cap = e.capacity.to_double();
    // Special times where the inflow rate or the sampling changes.
    std::vector<double> marks;
    for (const auto& w : windows[i]) {
      marks.push_back(w.t0);
      marks.push_back(w.t1);
    }
    for (const auto& cp : checkpoints[i]) marks.push_back(cp.first);
    marks.push_back(0.0);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    double z = 0.0;
    size_t next_cp = 0;
    auto note = [&](double t) {
      while (next_cp < checkpoints[i].size() &&
             checkpoints[i][next_cp].first <= t + 1e-15) {
        double dev = std::fabs(z / cap - checkpoints[i][next_cp].second);
        rep.max_queue_deviation = std::max(rep.max_queue_deviation, dev);
        ++next_cp;
      }
    };
    note(0.0);
    for (size_t k = 0; k + 1 < marks.size(); ++k) {
      double a = marks[k], b = marks[k + 1];
      if (b <= a) continue;
      double rate = 0.0;
      for (const auto& w : windows[i])
        if (w.t0 <= a && a < w.t1) rate += w.rate;
      int steps = std::max(1, static_cast<int>(std::ceil((b - a) / dt)));
      double h = (b - a) / steps;
      for (int s = 0; s < steps; ++s) {
        z += (rate - cap) * h;
        if (z < 0) z = 0;
      }
      note(b);
    }
  }
  rep.within_tolerance = rep.max_queue_deviation <= rep.tolerance;
  return rep;
}

namespace {

struct EdgeClock {
  double cap = 1.0;
  double sigma = 0.0;  // last committed entry time
  double z = 0.0;      // queued mass at sigma

  // Entry times are committed in order; clamp protects against float jitter.
  double delay_at(double t) const {
    double gap = t > sigma ? t - sigma : 0.0;
    double drained = z - cap * gap;
    return (drained > 0 ? drained : 0.0) / cap;
  }
  void deposit(double t, double mass) {
    double gap = t > sigma ? t - sigma : 0.0;
    double drained = z - cap * gap;
    z = (drained > 0 ? drained : 0.0) + mass;
    if (t > sigma) sigma = t;
  }
};

}  // namespace

double FluidResult::cumulative_at(double tau) const {
  double total = 0;
  for (const auto& [t, mass] : arrivals)
    if (t <= tau) total += mass;
  return total;
}

FluidResult simulate_best_response(const Network& net, double dt) {
  if (!(dt > 0)) throw DomainError("dt must be positive");
  Indexed ix(net);
  size_t n = net.nodes.size(), m = net.edges.size();
  std::vector<EdgeClock> clock(m);
  for (size_t i = 0; i < m; ++i) clock[i].cap = net.edges[i].capacity.to_double();

  double horizon = (net.demand / net.inflow_rate).to_double();
  double rate = net.inflow_rate.to_double();
  const double inf = std::numeric_limits<double>::infinity();
  size_t src = ix.node_index.at(net.source);
  size_t snk = ix.node_index.at(net.sink);

  FluidResult out;
  // Tile [0, horizon) with an even number of equal windows no wider than dt.
  // A uniform grid avoids a ragged final window, and keeping the count even
  // means halving dt refines this grid instead of shifting every window.
  long long steps = 2 * static_cast<long long>(std::ceil(horizon / (2.0 * dt)));
  if (steps < 2) steps = 2;
  double step = horizon / static_cast<double>(steps);
  double parcel = rate * step;
  bool first = true;
  for (long long k = 0; k < steps; ++k) {
    double theta = static_cast<double>(k) * step;
    // The parcel stands in for the departures over [theta, theta + step);
    // releasing it at the window midpoint cancels the first-order bias of a
    // left-endpoint rule, so the arrival curve converges quadratically up to
    // the parcel quantization itself.
    double depart = theta + 0.5 * step;

    std::vector<double> label(n, inf);
    label[src] = depart;
    for (size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (size_t i = 0; i < m; ++i) {
        size_t v = ix.tail_of(i), w = ix.head_of(i);
        if (label[v] == inf) continue;
        double cand = label[v] + net.edges[i].delay.to_double() +
                      clock[i].delay_at(label[v]);
        if (cand < label[w] - 1e-15) {
          label[w] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (label[snk] == inf)
      throw InternalError("sink unreachable in the fluid router");

    // Remaining time to the sink from each node, with queues projected the
    // same way as in the forward pass.
    std::vector<double> back(n, inf);
    back[snk] = 0.0;
    for (auto it = ix.topo_order.rbegin(); it != ix.topo_order.rend(); ++it) {
      size_t v = *it;
      for (int i : ix.out_edges[v]) {
        size_t w = ix.head_of(i);
        if (label[v] == inf || back[w] == inf) continue;
        double cand = net.edges[i].delay.to_double() +
                      clock[i].delay_at(label[v]) + back[w];
        if (cand < back[v]) back[v] = cand;
      }
    }
    if (back[src] == inf)
      throw InternalError("no route reaches the sink in the fluid router");

    std::vector<double> mass(n, 0.0);
    mass[src] = parcel;
    for (size_t v : ix.topo_order) {
      if (mass[v] <= 0 || v == snk) continue;
      // Remaining time through each usable out edge.
      std::vector<std::pair<double, int>> ways;
      for (int i : ix.out_edges[v]) {
        size_t w = ix.head_of(i);
        if (back[w] == inf) continue;
        ways.emplace_back(net.edges[i].delay.to_double() +
                              clock[i].delay_at(label[v]) + back[w],
                          i);
      }
      if (ways.empty())
        throw InternalError("routed mass stranded at node '" +
                            net.nodes[v] + "'");
      std::sort(ways.begin(), ways.end());
      // Water filling: the parcel spreads so the projected completion level
      // is equal on every route it uses. Depositing mass m on an edge of
      // capacity c raises its projected delay by m/c, so the split fills the
      // gaps between route times in capacity proportion. A winner-takes-all
      // rule would overshoot by a whole parcel and oscillate; this keeps the
      // discretization error at sub-parcel scale.
      size_t used = 1;
      double cap_sum = net.edges[ways[0].second].capacity.to_double();
      double weighted = ways[0].first * cap_sum;
      double level = ways[0].first + mass[v] / cap_sum;
      while (used < ways.size()) {
        if (level <= ways[used].first) break;
        double c = net.edges[ways[used].second].capacity.to_double();
        cap_sum += c;
        weighted += ways[used].first * c;
        level = (mass[v] + weighted) / cap_sum;
        ++used;
      }
      for (size_t k = 0; k < used; ++k) {
        int i = ways[k].second;
        double share =
            net.edges[i].capacity.to_double() * (level - ways[k].first);
        if (share <= 0) continue;
        clock[i].deposit(label[v], share);
        mass[ix.head_of(i)] += share;
      }
      mass[v] = 0;
    }

    if (first) {
      out.first_arrival = label[snk];
      first = false;
    }
    out.arrivals.push_back({label[snk], parcel});
    out.completion = std::max(out.completion, label[snk]);
  }
  std::sort(out.arrivals.begin(), out.arrivals.end());
  return out;
}

}  // namespace flowtime
