#include "flowtime/stackelberg.hpp"

#include "flowtime/errors.hpp"

namespace flowtime {

Network reduce_capacities(const Network& net, const StaticFlow& flow) {
  for (const auto& [eid, v] : flow.values) {
    const Edge* e = net.find_edge(eid);
    if (!e) throw ValidationError("flow on unknown edge '" + eid + "'");
    if (v.sign() < 0 || v > e->capacity)
      throw ValidationError("flow on edge '" + eid + "' breaks its capacity");
  }
  Network red = net;
  for (auto& e : red.edges) e.capacity = flow.at(e.id);
  return validate(red);
}

StackelbergResult stackelberg_pipeline(const Network& net, int phase_cap) {
  Network base = validate(net);
  StackelbergResult r;
  r.plan_before = quickest_flow(base);
  r.saturating_before = is_saturating(base, r.plan_before.static_flow);
  r.eq_before = simulate_equilibrium(base, phase_cap);
  r.poa_before = poa_summary(r.eq_before, r.plan_before);
  r.cert_before = certify_bounds(r.eq_before.completion_time,
                                 r.plan_before.horizon,
                                 r.poa_before.d_equilibrium, base.demand);

  r.reduced = reduce_capacities(base, r.plan_before.static_flow);
  r.plan_after = quickest_flow(r.reduced);
  r.horizon_preserved = r.plan_after.horizon == r.plan_before.horizon;
  r.eq_after = simulate_equilibrium(r.reduced, phase_cap);
  r.poa_after = poa_summary(r.eq_after, r.plan_after);
  r.cert_after = certify_bounds(r.eq_after.completion_time,
                                r.plan_after.horizon,
                                r.poa_after.d_equilibrium, r.reduced.demand);
  return r;
}

}  // namespace flowtime
