#include "flowtime/quickest.hpp"

#include <algorithm>
#include <optional>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

// Residual arc: index < m is edge i forward, index >= m is edge i-m reverse,
// index 2m is the super-source arc.
struct Ssp {
  const Network& net;
  Indexed ix;
  int m;
  int n;          // node count incl. super-source (index n-1)
  int super;      // super-source node index
  std::vector<Rat> flow;        // by edge index
  Rat super_flow = Rat(0);

  explicit Ssp(const Network& net_) : net(net_), ix(net_) {
    m = static_cast<int>(net.edges.size());
    n = static_cast<int>(net.nodes.size()) + 1;
    super = n - 1;
    flow.assign(m, Rat(0));
  }

  int arc_count() const { return 2 * m + 1; }
  int arc_tail(int a) const {
    if (a == 2 * m) return super;
    return a < m ? ix.tail_of(a) : ix.head_of(a - m);
  }
  int arc_head(int a) const {
    if (a == 2 * m) return ix.source;
    return a < m ? ix.head_of(a) : ix.tail_of(a - m);
  }
  Rat arc_cost(int a) const {
    if (a == 2 * m) return Rat(0);
    return a < m ? net.edges[a].delay : -net.edges[a - m].delay;
  }
  Rat arc_residual(int a) const {
    if (a == 2 * m) return net.inflow_rate - super_flow;
    return a < m ? net.edges[a].capacity - flow[a] : flow[a - m];
  }
  void push(int a, const Rat& amt) {
    if (a == 2 * m) super_flow += amt;
    else if (a < m) flow[a] += amt;
    else flow[a - m] -= amt;
  }
  // Deterministic order among residual arcs: super-source arc first, then by
  // (edge id, forward before reverse).
  bool arc_less(int a, int b) const {
    if (a == 2 * m) return true;
    if (b == 2 * m) return false;
    const std::string& ida = net.edges[a < m ? a : a - m].id;
    const std::string& idb = net.edges[b < m ? b : b - m].id;
    if (ida != idb) return ida < idb;
    return (a < m) && !(b < m);
  }

  // Bellman-Ford over residual arcs from the super-source.
  std::vector<std::optional<Rat>> distances() const {
    std::vector<std::optional<Rat>> dist(n);
    dist[super] = Rat(0);
    for (int round = 0; round < n - 1; ++round) {
      bool changed = false;
      for (int a = 0; a < arc_count(); ++a) {
        if (arc_residual(a) <= Rat(0)) continue;
        int u = arc_tail(a), v = arc_head(a);
        if (!dist[u]) continue;
        Rat cand = *dist[u] + arc_cost(a);
        if (!dist[v] || cand < *dist[v]) {
          dist[v] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    return dist;
  }

  // Arcs lying on some shortest path (tight and with residual capacity).
  std::vector<int> tight_arcs(const std::vector<std::optional<Rat>>& dist) const {
    std::vector<int> out;
    for (int a = 0; a < arc_count(); ++a) {
      if (arc_residual(a) <= Rat(0)) continue;
      int u = arc_tail(a), v = arc_head(a);
      if (dist[u] && dist[v] && *dist[u] + arc_cost(a) == *dist[v])
        out.push_back(a);
    }
    return out;
  }

  bool reaches_sink(int from, const std::vector<int>& arcs,
                    const std::vector<bool>& blocked) const {
    if (from == ix.sink) return true;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a : arcs) {
        if (arc_tail(a) != u) continue;
        int v = arc_head(a);
        if (seen[v] || blocked[v]) continue;
        if (v == ix.sink) return true;
        seen[v] = true;
        stack.push_back(v);
      }
    }
    return false;
  }

  // Lexicographically smallest simple shortest residual path, found by a
  // greedy walk that only enters nodes from which the sink stays reachable.
  std::vector<int> lex_shortest_path(const std::vector<int>& arcs) const {
    std::vector<int> path;
    std::vector<bool> visited(n, false);
    int u = super;
    visited[u] = true;
    while (u != ix.sink) {
      std::vector<int> cands;
      for (int a : arcs)
        if (arc_tail(a) == u && !visited[arc_head(a)]) cands.push_back(a);
      std::sort(cands.begin(), cands.end(),
                [this](int a, int b) { return arc_less(a, b); });
      bool advanced = false;
      for (int a : cands) {
        int v = arc_head(a);
        if (reaches_sink(v, arcs, visited)) {
          path.push_back(a);
          visited[v] = true;
          u = v;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        throw InternalError("shortest-path walk lost the sink");
    }
    return path;
  }

  StaticFlow snapshot() const {
    StaticFlow f;
    for (int i = 0; i < m; ++i) f.values[net.edges[i].id] = flow[i];
    f.value = super_flow;
    return f;
  }
};

// Runs successive shortest paths until `target` is reached (or exhaustion if
// target is null).
MinCostResult run_ssp(const Network& net, const Rat* target) {
  Ssp ssp(net);
  MinCostResult result;
  Rat sent(0);
  while (true) {
    if (target && sent == *target) break;
    auto dist = ssp.distances();
    if (!dist[ssp.ix.sink]) break;  // no augmenting path left
    auto arcs = ssp.tight_arcs(dist);
    auto path = ssp.lex_shortest_path(arcs);
    Rat amt = ssp.arc_residual(path[0]);
    for (int a : path) amt = min(amt, ssp.arc_residual(a));
    if (target) amt = min(amt, *target - sent);
    if (amt <= Rat(0)) throw InternalError("zero augmentation amount");
    for (int a : path) ssp.push(a, amt);
    sent += amt;

    Breakpoint bp;
    for (int a : path) {
      if (a == 2 * ssp.m) continue;  // internal super-source arc
      bp.arcs.push_back({net.edges[a < ssp.m ? a : a - ssp.m].id, a < ssp.m});
    }
    bp.value = amt;
    bp.delay = *dist[ssp.ix.sink];
    bp.flow_after = ssp.snapshot().values;
    result.breakpoints.push_back(std::move(bp));
  }
  result.flow = ssp.snapshot();
  if (target && sent < *target)
    throw InfeasibleError("target value " + target->str() +
                          " exceeds max flow value " + sent.str());
  return result;
}

}  // namespace

MinCostResult min_cost_flow(const Network& net, const Rat& target) {
  if (target < Rat(0)) throw DomainError("negative flow target");
  return run_ssp(net, &target);
}

Rat max_flow_value(const Network& net) { return run_ssp(net, nullptr).flow.value; }

std::vector<PathFlow> flow_decompose(const Network& net, const StaticFlow& flow) {
  Indexed ix(net);
  std::vector<Rat> rem(net.edges.size(), Rat(0));
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    rem[i] = flow.at(net.edges[i].id);
    if (rem[i] < Rat(0))
      throw InfeasibleError("negative flow on edge \"" + net.edges[i].id + "\"");
    if (rem[i] > net.edges[i].capacity)
      throw InfeasibleError("flow exceeds capacity on edge \"" + net.edges[i].id + "\"");
  }
  // Conservation at internal nodes.
  for (std::size_t v = 0; v < net.nodes.size(); ++v) {
    if (static_cast<int>(v) == ix.source || static_cast<int>(v) == ix.sink) continue;
    Rat in(0), out(0);
    for (int e : ix.in_edges[v]) in += rem[e];
    for (int e : ix.out_edges[v]) out += rem[e];
    if (in != out)
      throw InfeasibleError("flow violates conservation at node \"" + net.nodes[v] + "\"");
  }

  std::vector<PathFlow> paths;
  while (true) {
    Rat out_s(0);
    for (int e : ix.out_edges[ix.source]) out_s += rem[e];
    if (out_s == Rat(0)) break;

    std::vector<int> path;
    int u = ix.source;
    while (u != ix.sink) {
      int chosen = -1;
      for (int e : ix.out_edges[u]) {
        if (rem[e] <= Rat(0)) continue;
        if (chosen < 0 || net.edges[e].id < net.edges[chosen].id) chosen = e;
      }
      if (chosen < 0)
        throw InternalError("path stripping stuck at node \"" + net.nodes[u] + "\"");
      path.push_back(chosen);
      u = ix.head_of(chosen);
    }
    Rat amt = rem[path[0]];
    for (int e : path) amt = min(amt, rem[e]);
    PathFlow pf;
    pf.value = amt;
    pf.delay = Rat(0);
    for (int e : path) {
      rem[e] -= amt;
      pf.edges.push_back(net.edges[e].id);
      pf.delay += net.edges[e].delay;
    }
    paths.push_back(std::move(pf));
  }
  return paths;
}

Rat max_dynamic_value(const std::vector<Breakpoint>& breakpoints, const Rat& T) {
  if (T < Rat(0)) throw DomainError("negative horizon");
  Rat total(0);
  for (const auto& bp : breakpoints)
    if (bp.delay < T) total += bp.value * (T - bp.delay);
  return total;
}

QuickestFlowPlan quickest_flow(const Network& net) {
  MinCostResult full = run_ssp(net, nullptr);
  if (full.flow.value == Rat(0))
    throw NoRouteError("max flow value is zero, demand cannot be routed");

  const Rat& M = net.demand;
  const auto& bps = full.breakpoints;

  // Walk the piecewise-linear value function; segment k starts at delay d_k
  // with slope = cumulative value of breakpoints 1..k.
  Rat horizon;
  bool found = false;
  Rat slope(0), offset(0);  // value(T) = slope * T - offset on the segment
  for (std::size_t k = 0; k < bps.size(); ++k) {
    slope += bps[k].value;
    offset += bps[k].value * bps[k].delay;
    Rat seg_end_value;
    if (k + 1 < bps.size()) {
      seg_end_value = slope * bps[k + 1].delay - offset;
      if (seg_end_value < M) continue;
    }
    horizon = (M + offset) / slope;
    found = true;
    break;
  }
  if (!found) throw InternalError("value function inversion failed");

  // Keep the augmentation prefix with delay strictly below the horizon.
  QuickestFlowPlan plan;
  plan.horizon = horizon;
  plan.breakpoints = bps;
  plan.static_flow.value = Rat(0);
  for (const auto& e : net.edges) plan.static_flow.values[e.id] = Rat(0);
  for (const auto& bp : bps) {
    if (bp.delay >= horizon) break;
    plan.static_flow.values = bp.flow_after;
    plan.static_flow.value += bp.value;
  }
  plan.decomposition = flow_decompose(net, plan.static_flow);
  plan.saturating = is_saturating(net, plan.static_flow);

  Rat mass(0);
  for (const auto& p : plan.decomposition) mass += p.value * (horizon - p.delay);
  if (mass != M)
    throw InternalError("horizon mass balance failed: " + mass.str() +
                        " != " + M.str());
  return plan;
}

bool is_saturating(const Network& net, const StaticFlow& flow) {
  for (const auto& e : net.edges)
    if (flow.at(e.id) != e.capacity) return false;
  Indexed ix(net);
  Rat out_s(0);
  for (int e : ix.out_edges[ix.source]) out_s += flow.at(net.edges[e].id);
  return out_s == net.inflow_rate;
}

}  // namespace flowtime
