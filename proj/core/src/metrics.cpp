#include "flowtime/metrics.hpp"

#include <algorithm>
#include <map>

#include "flowtime/errors.hpp"
#include "flowtime/interval_log.hpp"

namespace flowtime {

Rat total_delay_equilibrium(const EquilibriumTrace& trace) {
  Rat total(0);
  for (const auto& ph : trace.phases) {
    Rat a = ph.tau_start, b = ph.tau_end;
    total = total + ph.sink_rate * (b * b - a * a) / Rat(2);
  }
  return total;
}

Rat total_delay_repeated(const QuickestFlowPlan& plan) {
  // Arrival rate is a step function increasing at each distinct path delay.
  std::map<Rat, Rat> rate_jump;
  for (const auto& p : plan.decomposition) rate_jump[p.delay] = rate_jump[p.delay] + p.value;
  Rat total(0), rate(0), prev(0);
  bool first = true;
  for (const auto& [d, jump] : rate_jump) {
    if (!first) total = total + rate * (d * d - prev * prev) / Rat(2);
    rate = rate + jump;
    prev = d;
    first = false;
  }
  Rat T = plan.horizon;
  total = total + rate * (T * T - prev * prev) / Rat(2);
  return total;
}

Rat delay_lower_bound(const Rat& demand, const Rat& horizon) {
  return demand * horizon / Rat(2);
}

PoaSummary poa_summary(const EquilibriumTrace& trace, const QuickestFlowPlan& plan) {
  PoaSummary s;
  s.d_equilibrium = total_delay_equilibrium(trace);
  s.d_repeated = total_delay_repeated(plan);
  s.d_lower = delay_lower_bound(trace.demand, plan.horizon);
  s.time_ratio = trace.completion_time / plan.horizon;
  s.delay_ratio_upper = s.d_equilibrium / s.d_lower;
  return s;
}

BoundCert certify_bounds(const Rat& completion, const Rat& horizon,
                         const Rat& d_equilibrium, const Rat& demand) {
  BoundCert c;
  c.euler_used = euler_upper();
  Rat e = c.euler_used;
  c.time_bound_holds = completion * (e - Rat(1)) <= horizon * e;
  c.delay_bound_holds = d_equilibrium * (e - Rat(1)) <= e * demand * horizon;
  return c;
}

namespace {

std::string phase_loc(int index) { return "phase " + std::to_string(index); }

std::string edge_loc(int index, const std::string& edge) {
  return "phase " + std::to_string(index) + " edge " + edge;
}

void add_eq(std::vector<CheckRow>& rows, const std::string& id,
            const std::string& loc, const Rat& lhs, const Rat& rhs) {
  rows.push_back({id, loc, lhs == rhs, lhs.str(), rhs.str()});
}

void add_le(std::vector<CheckRow>& rows, const std::string& id,
            const std::string& loc, const Rat& lhs, const Rat& rhs) {
  rows.push_back({id, loc, lhs <= rhs, lhs.str(), rhs.str()});
}

}  // namespace

std::vector<CheckRow> run_invariant_suite(const Network& net,
                                          const EquilibriumTrace& trace,
                                          const QuickestFlowPlan* plan) {
  std::vector<CheckRow> rows;
  const Rat c0 = trace.inflow_rate;
  Rat prev_tau = trace.first_arrival;

  for (const auto& ph : trace.phases) {
    const std::string at = phase_loc(ph.index);

    // Sink rate is the reciprocal image of the sink label slope.
    add_eq(rows, "sink_rate_reciprocal", at,
           ph.sink_rate * ph.label_slopes.at(net.sink), c0);

    // Arrivals advance by (inflow / rate) per unit of departure time.
    add_eq(rows, "arrival_progress", at, ph.tau_end - ph.tau_start,
           (c0 / ph.sink_rate) * (ph.theta_end - ph.theta_start));

    rows.push_back({"arrival_times_increase", at, ph.tau_end > prev_tau,
                    ph.tau_end.str(), prev_tau.str()});
    prev_tau = ph.tau_end;

    // Aggregate capacity-weighted queue growth is bounded by the inflow
    // times the log of its ratio to the current sink rate.
    Rat growth(0);
    for (const auto& [eid, qs] : ph.queue_slopes)
      growth = growth + net.find_edge(eid)->capacity * qs;
    Rat ratio = c0 / ph.sink_rate;
    rows.push_back({"queue_growth_bound", at,
                    certified_le_log(growth, c0, ratio), growth.str(),
                    c0.str() + "*ln(" + ratio.str() + ")"});

    for (const auto& n : net.nodes) {
      const Rat& ls = ph.label_slopes.at(n);
      rows.push_back({"label_slopes_nonnegative", at + " node " + n,
                      ls.sign() >= 0, ls.str(), "0"});
    }

    std::map<std::string, bool> queued;
    for (const auto& id : ph.queued_edges) queued[id] = true;
    std::map<std::string, bool> tight;
    for (const auto& id : ph.shortest_edges) tight[id] = true;
    for (const auto& id : ph.queued_edges)
      rows.push_back({"queued_edges_tight", edge_loc(ph.index, id),
                      tight.count(id) > 0, "queued", "tight"});

    for (const auto& e : net.edges) {
      Rat q0 = ph.queues_start.count(e.id) ? ph.queues_start.at(e.id) : Rat(0);
      rows.push_back({"queue_nonnegative", edge_loc(ph.index, e.id),
                      q0.sign() >= 0, q0.str(), "0"});
      if (!tight.count(e.id)) continue;
      const Rat& qs = ph.queue_slopes.at(e.id);
      // Exit times stay ordered: entry label plus queue cannot regress.
      add_le(rows, "fifo_exit_order", edge_loc(ph.index, e.id), Rat(0),
             ph.label_slopes.at(e.tail) + qs);
      if (!queued.count(e.id))
        rows.push_back({"queue_slope_sign", edge_loc(ph.index, e.id),
                        qs.sign() >= 0, qs.str(), "0"});
    }
  }

  // Total arrivals across phases account for the whole demand.
  Rat mass(0);
  for (const auto& ph : trace.phases)
    mass = mass + ph.sink_rate * (ph.tau_end - ph.tau_start);
  add_eq(rows, "arrival_mass_total", "trace", mass, trace.demand);

  // Demand equals the final rate times completion minus the rate-step
  // weighted arrival times.
  Rat steps(0);
  prev_tau = trace.first_arrival;
  for (const auto& ph : trace.phases) {
    steps = steps + prev_tau * trace.capacity_deltas.at(ph.index);
    prev_tau = ph.tau_end;
  }
  Rat final_rate = trace.phases.back().sink_rate;
  add_eq(rows, "mass_balance_arrivals", "trace",
         final_rate * trace.completion_time - steps, trace.demand);

  if (plan) {
    // The flow value can sit below the inflow rate when the demand runs out
    // before the slower augmenting paths become worth using.
    Rat path_delay_mass(0);
    for (const auto& p : plan->decomposition)
      path_delay_mass = path_delay_mass + p.value * p.delay;
    add_eq(rows, "mass_balance_horizon", "plan",
           plan->static_flow.value * plan->horizon - path_delay_mass,
           trace.demand);
  }
  return rows;
}

}  // namespace flowtime
