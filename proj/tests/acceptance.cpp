// End-to-end acceptance gate. Each numbered criterion prints one PASS/FAIL
// line; the process exits nonzero if any of them fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flowtime/equilibrium.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/fluid.hpp"
#include "flowtime/instance_gen.hpp"
#include "flowtime/metrics.hpp"
#include "flowtime/oracle.hpp"
#include "flowtime/quickest.hpp"
#include "flowtime/stackelberg.hpp"

using namespace flowtime;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s%s\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), detail.empty() ? "" : "  (",
              detail.c_str(), detail.empty() ? "" : ")");
  if (!ok) ++g_failures;
}

std::string fl(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double exact_cumulative(const std::vector<CurveSegment>& curve, double tau) {
  double total = 0;
  for (const auto& seg : curve) {
    double a = seg.tau_start.to_double();
    if (tau <= a) break;
    double hi = std::min(tau, seg.tau_end.to_double());
    total += seg.rate.to_double() * (hi - a);
  }
  return total;
}

// Sup-norm distance between the parcel router's cumulative arrivals (a step
// function) and the exact curve. The extrema sit at the steps, so no sample
// grid is needed.
double max_curve_deviation(const std::vector<CurveSegment>& curve,
                           const FluidResult& fr, double tail) {
  std::vector<std::pair<double, double>> steps;
  for (const auto& [t, mass] : fr.arrivals) {
    if (!steps.empty() && steps.back().first == t)
      steps.back().second += mass;
    else
      steps.emplace_back(t, mass);
  }
  double worst = 0, total = 0, t_prev = 0;
  for (const auto& [t, mass] : steps) {
    worst = std::max(worst, std::abs(total - exact_cumulative(curve, t_prev)));
    worst = std::max(worst, std::abs(total - exact_cumulative(curve, t)));
    total += mass;
    t_prev = t;
  }
  worst = std::max(worst, std::abs(total - exact_cumulative(curve, t_prev)));
  worst = std::max(worst, std::abs(total - exact_cumulative(curve, t_prev + tail)));
  return worst;
}

struct BulkCase {
  Network net;
  StackelbergResult result;
};

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  // 1: the hand-checkable branch instance reproduces its derivative table
  // and event times with exact arithmetic, quickly.
  {
    Network net = fx::branch();
    auto t0 = clock::now();
    EquilibriumTrace tr = simulate_equilibrium(net);
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool ok = tr.phases.size() == 3 && tr.events.size() == 3;
    if (ok) {
      const Phase& p1 = tr.phases[0];
      const Phase& p2 = tr.phases[1];
      const Phase& p3 = tr.phases[2];
      ok = p1.label_slopes.at("v") == Rat(3, 2) &&
           p1.label_slopes.at("t") == Rat(3) &&
           p1.queue_slopes.at("e1") == Rat(1, 2) &&
           p1.queue_slopes.at("e2") == Rat(3, 2) &&
           tr.events[0].theta == Rat(1, 2) && tr.events[1].theta == Rat(5, 6) &&
           p2.rate_flow.at("e1") == Rat(3, 2) &&
           p2.rate_flow.at("e2") == Rat(3, 2) &&
           p2.rate_flow.at("e4") == Rat(3, 2) &&
           p2.label_slopes.at("v") == Rat(3, 4) &&
           p2.label_slopes.at("t") == Rat(3, 2) && p3.rate_flow.at("e1") == Rat(2);
      for (const auto& [node, slope] : p3.label_slopes)
        ok = ok && slope == Rat(1);
    }
    ok = ok && secs < 1.0;
    report(1, "branch fixture reproduces the golden derivative table", ok,
           fl(secs * 1000) + " ms");
  }

  // 2: branch end-to-end numbers, exactly, and the parcel router lands on the
  // same arrival curve at dt = 1e-4.
  {
    Network net = fx::branch();
    QuickestFlowPlan plan = quickest_flow(net);
    EquilibriumTrace tr = simulate_equilibrium(net);
    PoaSummary poa = poa_summary(tr, plan);
    bool exact_ok = plan.horizon == Rat(5, 2) && tr.completion_time == Rat(3) &&
                    poa.time_ratio == Rat(6, 5) && poa.d_equilibrium == Rat(83, 8);
    FluidResult fr = simulate_best_response(net, 1e-4);
    double dev = max_curve_deviation(arrival_curve(tr), fr, 0.5);
    report(2, "branch horizon 5/2, completion 3, ratio 6/5, delay 83/8",
           exact_ok && dev <= 5e-3, "router deviation " + fl(dev));
  }

  // Shared instance pool for 3-5 and 7. Mixed sizes, all within n <= 8 nodes
  // and 16 edges.
  std::vector<BulkCase> bulk;
  int pipeline_errors = 0;
  std::string first_error;
  {
    struct Cfg {
      std::uint64_t seed0;
      int count, nodes, extra;
    };
    for (const Cfg& c : {Cfg{1, 200, 7, 6}, Cfg{501, 150, 6, 5}, Cfg{901, 150, 5, 3}}) {
      for (int i = 0; i < c.count; ++i) {
        GenConfig g;
        g.seed = c.seed0 + static_cast<std::uint64_t>(i);
        g.nodes = c.nodes;
        g.extra_edges = c.extra;
        try {
          Network net = generate_instance(g);
          bulk.push_back({net, stackelberg_pipeline(net)});
        } catch (const Error& e) {
          ++pipeline_errors;
          if (first_error.empty())
            first_error = "seed " + std::to_string(g.seed) + ": " + e.what();
        }
      }
    }
  }

  // 3: after capacity reduction, completion/horizon stays under e/(e-1) by
  // the certified interval test, and the bound is exercised, not vacuous.
  {
    int bound_failures = 0, exercised = 0;
    Rat max_ratio(0);
    for (const BulkCase& b : bulk) {
      if (!b.result.cert_after.time_bound_holds) ++bound_failures;
      max_ratio = max(max_ratio, b.result.poa_after.time_ratio);
      if (b.result.poa_after.time_ratio > Rat(21, 20)) ++exercised;
    }
    bool ok = pipeline_errors == 0 && bound_failures == 0 && exercised >= 1 &&
              bulk.size() >= 500;
    std::string detail = std::to_string(bulk.size()) + " instances, max ratio " +
                         fl(max_ratio.to_double()) + ", " +
                         std::to_string(exercised) + " above 1.05";
    if (pipeline_errors)
      detail += ", " + std::to_string(pipeline_errors) + " errors (" + first_error + ")";
    report(3, "time bound certified on every generated instance", ok, detail);
  }

  // 4: same pool, total-delay bound after reduction.
  {
    int bound_failures = 0;
    for (const BulkCase& b : bulk)
      if (!b.result.cert_after.delay_bound_holds) ++bound_failures;
    report(4, "delay bound certified on every generated instance",
           pipeline_errors == 0 && bound_failures == 0,
           std::to_string(bound_failures) + " failures");
  }

  // 5: the structural invariant suite is green on every phase of every trace
  // the earlier criteria produced, before and after reduction.
  {
    long rows = 0, bad = 0;
    std::string where;
    auto tally = [&](const Network& net, const EquilibriumTrace& tr,
                     const QuickestFlowPlan& plan) {
      for (const CheckRow& r : run_invariant_suite(net, tr, &plan)) {
        ++rows;
        if (!r.pass && where.empty()) where = r.id + " at " + r.location;
        if (!r.pass) ++bad;
      }
    };
    {
      Network net = fx::branch();
      tally(net, simulate_equilibrium(net), quickest_flow(net));
    }
    for (const BulkCase& b : bulk) {
      tally(b.net, b.result.eq_before, b.result.plan_before);
      tally(b.result.reduced, b.result.eq_after, b.result.plan_after);
    }
    report(5, "invariant suite green on every phase of every trace", bad == 0,
           std::to_string(rows) + " rows" + (bad ? ", first failure " + where : ""));
  }

  // 6: with all delays zero the equilibrium finishes exactly at the quickest
  // horizon.
  {
    int count = 0, bad = 0;
    std::vector<Network> zero_nets;
    for (std::uint64_t seed = 2001; seed < 2031; ++seed) {
      GenConfig g;
      g.seed = seed;
      g.nodes = 5;
      g.extra_edges = 3;
      g.zero_delays = true;
      zero_nets.push_back(generate_instance(g));
    }
    for (std::uint64_t seed = 2101; seed < 2131; ++seed) {
      GenConfig g;
      g.seed = seed;
      g.nodes = 6;
      g.extra_edges = 4;
      g.zero_delays = true;
      zero_nets.push_back(generate_instance(g));
    }
    for (const Network& net : zero_nets) {
      ++count;
      if (simulate_equilibrium(net).completion_time != quickest_flow(net).horizon)
        ++bad;
    }
    report(6, "zero-delay equilibria complete exactly at the horizon",
           count >= 50 && bad == 0,
           std::to_string(count) + " instances, " + std::to_string(bad) + " off");
  }

  // 7: on every instance above small enough to enumerate (<= 8 edges), the
  // engine horizon equals the brute-force reference, and shaving one part in
  // a million off the horizon leaves the demand unmet.
  {
    int checked = 0, horizon_bad = 0, margin_bad = 0;
    auto probe = [&](const Network& net, const QuickestFlowPlan& plan) {
      if (net.edges.size() > 8) return;
      ++checked;
      auto ref = brute_horizon(net);
      if (!ref || *ref != plan.horizon) ++horizon_bad;
      Rat shaved = plan.horizon - plan.horizon / Rat(1000000);
      if (!(max_dynamic_value(plan.breakpoints, shaved) < net.demand)) ++margin_bad;
    };
    for (const auto& fix : {fx::link(), fx::branch(), fx::twin()})
      probe(fix, quickest_flow(fix));
    for (const BulkCase& b : bulk) probe(b.net, b.result.plan_before);
    bool ok = checked >= 100 && horizon_bad == 0 && margin_bad == 0;
    report(7, "small-instance horizons match the exhaustive reference", ok,
           std::to_string(checked) + " checked, " + std::to_string(horizon_bad) +
               " horizon / " + std::to_string(margin_bad) + " margin mismatches");
  }

  // 8: the parcel router converges at first order: halving dt at least halves
  // the sup-norm gap to the exact arrival curve.
  {
    bool ok = true;
    std::string detail;
    struct Named {
      const char* name;
      Network net;
    };
    for (const Named& c : {Named{"branch", fx::branch()}, Named{"link", fx::link()}}) {
      auto curve = arrival_curve(simulate_equilibrium(c.net));
      double dev_full = max_curve_deviation(curve, simulate_best_response(c.net, 1e-3), 0.5);
      double dev_half = max_curve_deviation(curve, simulate_best_response(c.net, 5e-4), 0.5);
      ok = ok && dev_half <= 0.5 * dev_full + 1e-12;
      if (!detail.empty()) detail += ", ";
      detail += std::string(c.name) + " " + fl(dev_full) + " -> " + fl(dev_half);
    }
    report(8, "halving the router step at least halves its deviation", ok, detail);
  }

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
