#include "cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "flowtime/equilibrium.hpp"
#include "flowtime/errors.hpp"
#include "flowtime/fluid.hpp"
#include "flowtime/instance_gen.hpp"
#include "flowtime/metrics.hpp"
#include "flowtime/network_io.hpp"
#include "flowtime/oracle.hpp"
#include "flowtime/quickest.hpp"
#include "flowtime/report.hpp"
#include "flowtime/stackelberg.hpp"

namespace flowtime::cli {

namespace {

bool log_enabled() {
  const char* v = std::getenv("FLOWTIME_LOG");
  return v && *v;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty())
    out << text;
  else
    write_file(cfg.out_path, text);
}

std::string fl(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

Network load(const RunConfig& cfg) {
  if (cfg.instance_path.empty())
    throw IoError("no instance file given (use --instance)");
  return validate(load_network_file(cfg.instance_path));
}

int run_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Network net = load(cfg);
  if (!(cfg.dt > 0)) throw DomainError("--dt must be positive");
  QuickestFlowPlan plan = quickest_flow(net);
  EquilibriumTrace trace = simulate_equilibrium(net, cfg.phase_cap);
  if (log_enabled())
    err << "[certify] horizon " << plan.horizon << ", " << trace.phases.size()
        << " phases, completion " << trace.completion_time << "\n";

  std::vector<CheckRow> rows = run_invariant_suite(net, trace, &plan);

  ReplayReport rr = replay_trace(net, trace, cfg.dt);
  rows.push_back({"fluid_replay", "dt " + fl(cfg.dt), rr.within_tolerance,
                  fl(rr.max_queue_deviation), fl(rr.tolerance)});

  Rat met = max_dynamic_value(plan.breakpoints, plan.horizon);
  rows.push_back({"demand_met_at_horizon", "plan", met == net.demand,
                  met.str(), net.demand.str()});
  Rat shaved = plan.horizon - plan.horizon / Rat(1000000);
  Rat early = max_dynamic_value(plan.breakpoints, shaved);
  rows.push_back({"horizon_strictly_minimal", "plan", early < net.demand,
                  early.str(), net.demand.str()});

  rows.push_back({"completion_not_below_horizon", "trace",
                  trace.completion_time >= plan.horizon,
                  trace.completion_time.str(), plan.horizon.str()});

  Network reduced = reduce_capacities(net, plan.static_flow);
  Rat h2 = quickest_flow(reduced).horizon;
  rows.push_back({"reduction_preserves_horizon", "plan", h2 == plan.horizon,
                  h2.str(), plan.horizon.str()});

  if (net.edges.size() <= 10) {
    auto ref = brute_horizon(net);
    rows.push_back({"horizon_matches_reference", "plan",
                    ref && *ref == plan.horizon,
                    ref ? ref->str() : "none", plan.horizon.str()});
  }

  emit(cfg, out, checks_json(rows));
  for (const auto& r : rows)
    if (!r.pass) return 1;
  return 0;
}

struct BatchRow {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string detail;      // failure description, empty when ok
  std::string time_ratio;  // exact, before reduction
  double time_ratio_float = 0;
  std::size_t edges = 0;
  std::size_t phases_before = 0, phases_after = 0;
  std::string horizon, completion_before, completion_after;
};

BatchRow run_one(const RunConfig& cfg, std::uint64_t seed) {
  BatchRow row;
  row.seed = seed;
  try {
    GenConfig g;
    g.seed = seed;
    g.nodes = cfg.nodes;
    g.extra_edges = cfg.density;
    g.zero_delays = cfg.zero_delays;
    Network net = generate_instance(g);
    row.edges = net.edges.size();

    StackelbergResult r = stackelberg_pipeline(net, cfg.phase_cap);
    row.phases_before = r.eq_before.phases.size();
    row.phases_after = r.eq_after.phases.size();
    row.horizon = r.plan_before.horizon.str();
    row.completion_before = r.eq_before.completion_time.str();
    row.completion_after = r.eq_after.completion_time.str();
    row.time_ratio = r.poa_before.time_ratio.str();
    row.time_ratio_float = r.poa_before.time_ratio.to_double();

    std::vector<std::string> problems;
    if (!r.horizon_preserved) problems.push_back("horizon changed by reduction");
    if (!r.cert_after.time_bound_holds)
      problems.push_back("time bound failed after reduction");
    if (!r.cert_after.delay_bound_holds)
      problems.push_back("delay bound failed after reduction");
    if (cfg.zero_delays &&
        r.eq_before.completion_time != r.plan_before.horizon)
      problems.push_back("zero-delay completion differs from horizon");
    for (const auto& c : run_invariant_suite(net, r.eq_before, &r.plan_before))
      if (!c.pass) problems.push_back("before: " + c.id + " at " + c.location);
    for (const auto& c : run_invariant_suite(r.reduced, r.eq_after, &r.plan_after))
      if (!c.pass) problems.push_back("after: " + c.id + " at " + c.location);

    row.ok = problems.empty();
    for (std::size_t i = 0; i < problems.size(); ++i)
      row.detail += (i ? "; " : "") + problems[i];
  } catch (const Error& e) {
    row.ok = false;
    row.detail = std::string(e.kind_name()) + ": " + e.what();
  }
  return row;
}

int run_batch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.count < 1) throw DomainError("--count must be at least 1");
  if (cfg.jobs < 1) throw DomainError("--jobs must be at least 1");

  std::vector<BatchRow> rows(cfg.count);
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= cfg.count) return;
      rows[i] = run_one(cfg, cfg.seed + static_cast<std::uint64_t>(i));
    }
  };
  int threads = std::min(cfg.jobs, cfg.count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int failed = 0;
  double max_ratio = 0;
  std::string max_ratio_exact = "0";
  for (const auto& r : rows) {
    if (!r.ok) ++failed;
    if (r.time_ratio_float > max_ratio) {
      max_ratio = r.time_ratio_float;
      max_ratio_exact = r.time_ratio;
    }
    if (log_enabled() && !r.ok)
      err << "[batch] seed " << r.seed << " failed: " << r.detail << "\n";
  }

  std::ostringstream os;
  os << "{\n  \"kind\": \"batch_summary\",\n";
  os << "  \"count\": " << cfg.count << ",\n";
  os << "  \"failed\": " << failed << ",\n";
  os << "  \"max_time_ratio\": \"" << max_ratio_exact << "\",\n";
  os << "  \"max_time_ratio_float\": " << fl(max_ratio) << ",\n";
  os << "  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BatchRow& r = rows[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"seed\": " << r.seed << ", \"ok\": " << (r.ok ? "true" : "false")
       << ", \"edges\": " << r.edges << ", \"horizon\": \"" << r.horizon
       << "\", \"completion\": \"" << r.completion_before
       << "\", \"completion_reduced\": \"" << r.completion_after
       << "\", \"time_ratio\": \"" << r.time_ratio << "\", \"phases\": ["
       << r.phases_before << ", " << r.phases_after << "], \"detail\": \""
       << esc(r.detail) << "\"}";
  }
  os << (rows.empty() ? "" : "\n  ") << "]\n}\n";
  emit(cfg, out, os.str());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "validate") {
      emit(cfg, out, serialize_network(load(cfg)));
      return 0;
    }
    if (cfg.command == "quickest") {
      Network net = load(cfg);
      emit(cfg, out, plan_json(net, quickest_flow(net)));
      return 0;
    }
    if (cfg.command == "equilibrium") {
      Network net = load(cfg);
      EquilibriumTrace trace = simulate_equilibrium(net, cfg.phase_cap);
      if (log_enabled())
        err << "[equilibrium] " << trace.phases.size() << " phases, completion "
            << trace.completion_time << "\n";
      emit(cfg, out, trace_json(net, trace));
      return 0;
    }
    if (cfg.command == "stackelberg") {
      Network net = load(cfg);
      emit(cfg, out, pipeline_json(net, stackelberg_pipeline(net, cfg.phase_cap)));
      return 0;
    }
    if (cfg.command == "certify") return run_certify(cfg, out, err);
    if (cfg.command == "batch") return run_batch(cfg, out, err);
    if (cfg.command == "generate") {
      GenConfig g;
      g.seed = cfg.seed;
      g.nodes = cfg.nodes;
      g.extra_edges = cfg.density;
      g.zero_delays = cfg.zero_delays;
      emit(cfg, out, serialize_network(generate_instance(g)));
      return 0;
    }
    throw DomainError("unknown command \"" + cfg.command + "\"");
  } catch (const Error& e) {
    err << "{\"error\": \"" << e.kind_name() << "\", \"message\": \""
        << esc(e.what()) << "\"}\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "{\"error\": \"internal\", \"message\": \"" << esc(e.what())
        << "\"}\n";
    return static_cast<int>(ErrorKind::Internal);
  }
}

}  // namespace flowtime::cli
