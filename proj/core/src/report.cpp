#include "flowtime/report.hpp"

#include <cstdio>
#include <sstream>

namespace flowtime {

namespace {

std::string fl(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fl(const Rat& r) { return fl(r.to_double()); }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string rat_map(const std::map<std::string, Rat>& m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ", ") << quoted(k) << ": " << quoted(v.str());
    first = false;
  }
  os << "}";
  return os.str();
}

std::string id_list(const std::vector<std::string>& ids) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < ids.size(); ++i)
    os << (i ? ", " : "") << quoted(ids[i]);
  os << "]";
  return os.str();
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Queue: return "queue_depleted";
    case EventKind::Path: return "path_joined";
    case EventKind::Terminal: return "terminal";
  }
  return "terminal";
}

}  // namespace

std::string plan_json(const Network& net, const QuickestFlowPlan& plan) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"quickest_flow\",\n";
  os << "  \"inflow_rate\": " << quoted(net.inflow_rate.str()) << ",\n";
  os << "  \"demand\": " << quoted(net.demand.str()) << ",\n";
  os << "  \"horizon\": " << quoted(plan.horizon.str()) << ",\n";
  os << "  \"horizon_float\": " << fl(plan.horizon) << ",\n";
  os << "  \"saturating\": " << (plan.saturating ? "true" : "false") << ",\n";
  os << "  \"flow_value\": " << quoted(plan.static_flow.value.str()) << ",\n";
  os << "  \"static_flow\": " << rat_map(plan.static_flow.values) << ",\n";
  os << "  \"decomposition\": [";
  for (std::size_t i = 0; i < plan.decomposition.size(); ++i) {
    const PathFlow& p = plan.decomposition[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"edges\": " << id_list(p.edges) << ", \"value\": "
       << quoted(p.value.str()) << ", \"delay\": " << quoted(p.delay.str()) << "}";
  }
  os << (plan.decomposition.empty() ? "" : "\n  ") << "],\n";
  os << "  \"augmentations\": [";
  for (std::size_t i = 0; i < plan.breakpoints.size(); ++i) {
    const Breakpoint& b = plan.breakpoints[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"delay\": " << quoted(b.delay.str()) << ", \"value\": "
       << quoted(b.value.str()) << "}";
  }
  os << (plan.breakpoints.empty() ? "" : "\n  ") << "]\n";
  os << "}\n";
  return os.str();
}

std::string trace_json(const Network& net, const EquilibriumTrace& trace) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"equilibrium_trace\",\n";
  os << "  \"inflow_rate\": " << quoted(trace.inflow_rate.str()) << ",\n";
  os << "  \"demand\": " << quoted(trace.demand.str()) << ",\n";
  os << "  \"first_arrival\": " << quoted(trace.first_arrival.str()) << ",\n";
  os << "  \"completion_time\": " << quoted(trace.completion_time.str()) << ",\n";
  os << "  \"completion_float\": " << fl(trace.completion_time) << ",\n";
  os << "  \"phases\": [";
  for (std::size_t i = 0; i < trace.phases.size(); ++i) {
    const Phase& p = trace.phases[i];
    os << (i ? ",\n    " : "\n    ") << "{\n";
    os << "      \"index\": " << p.index << ",\n";
    os << "      \"theta\": [" << quoted(p.theta_start.str()) << ", "
       << quoted(p.theta_end.str()) << "],\n";
    os << "      \"tau\": [" << quoted(p.tau_start.str()) << ", "
       << quoted(p.tau_end.str()) << "],\n";
    os << "      \"sink_rate\": " << quoted(p.sink_rate.str()) << ",\n";
    os << "      \"tight_cut_capacity\": " << quoted(p.tight_cut_capacity.str()) << ",\n";
    os << "      \"shortest_edges\": " << id_list(p.shortest_edges) << ",\n";
    os << "      \"queued_edges\": " << id_list(p.queued_edges) << ",\n";
    os << "      \"rate_flow\": " << rat_map(p.rate_flow) << ",\n";
    os << "      \"label_slopes\": " << rat_map(p.label_slopes) << ",\n";
    os << "      \"queue_slopes\": " << rat_map(p.queue_slopes) << ",\n";
    os << "      \"labels_start\": " << rat_map(p.labels_start) << ",\n";
    os << "      \"queues_start\": " << rat_map(p.queues_start) << "\n";
    os << "    }";
  }
  os << (trace.phases.empty() ? "" : "\n  ") << "],\n";
  os << "  \"events\": [";
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"index\": " << e.index << ", \"kind\": " << quoted(kind_name(e.kind))
       << ", \"edge\": " << quoted(e.edge) << ", \"theta\": "
       << quoted(e.theta.str()) << ", \"tau\": " << quoted(e.tau.str()) << "}";
  }
  os << (trace.events.empty() ? "" : "\n  ") << "],\n";
  os << "  \"sink_rate_steps\": {";
  bool first = true;
  for (const auto& [idx, d] : trace.capacity_deltas) {
    os << (first ? "" : ", ") << "\"" << idx << "\": " << quoted(d.str());
    first = false;
  }
  os << "}\n}\n";
  return os.str();
}

namespace {

void side_json(std::ostringstream& os, const std::string& indent,
               const QuickestFlowPlan& plan, const EquilibriumTrace& eq,
               const PoaSummary& poa, const BoundCert& cert, bool saturating) {
  os << indent << "\"horizon\": " << quoted(plan.horizon.str()) << ",\n";
  os << indent << "\"completion_time\": " << quoted(eq.completion_time.str()) << ",\n";
  os << indent << "\"time_ratio\": " << quoted(poa.time_ratio.str()) << ",\n";
  os << indent << "\"time_ratio_float\": " << fl(poa.time_ratio) << ",\n";
  os << indent << "\"delay_ratio_upper\": " << quoted(poa.delay_ratio_upper.str()) << ",\n";
  os << indent << "\"delay_ratio_upper_float\": " << fl(poa.delay_ratio_upper) << ",\n";
  os << indent << "\"total_delay_equilibrium\": " << quoted(poa.d_equilibrium.str()) << ",\n";
  os << indent << "\"total_delay_repeated\": " << quoted(poa.d_repeated.str()) << ",\n";
  os << indent << "\"total_delay_lower_bound\": " << quoted(poa.d_lower.str()) << ",\n";
  os << indent << "\"saturating\": " << (saturating ? "true" : "false") << ",\n";
  os << indent << "\"phase_count\": " << eq.phases.size() << ",\n";
  os << indent << "\"certified\": {\"time_bound_holds\": "
     << (cert.time_bound_holds ? "true" : "false")
     << ", \"delay_bound_holds\": " << (cert.delay_bound_holds ? "true" : "false")
     << ", \"euler_used\": " << quoted(cert.euler_used.str()) << "}\n";
}

}  // namespace

std::string pipeline_json(const Network& net, const StackelbergResult& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"coordination_pipeline\",\n";
  os << "  \"inflow_rate\": " << quoted(net.inflow_rate.str()) << ",\n";
  os << "  \"demand\": " << quoted(net.demand.str()) << ",\n";
  os << "  \"horizon_preserved\": " << (r.horizon_preserved ? "true" : "false") << ",\n";
  os << "  \"before\": {\n";
  side_json(os, "    ", r.plan_before, r.eq_before, r.poa_before, r.cert_before,
            r.saturating_before);
  os << "  },\n";
  os << "  \"after\": {\n";
  side_json(os, "    ", r.plan_after, r.eq_after, r.poa_after, r.cert_after,
            is_saturating(r.reduced, r.plan_after.static_flow));
  os << "  },\n";
  os << "  \"reduced_capacities\": " << rat_map(r.plan_before.static_flow.values)
     << "\n}\n";
  return os.str();
}

std::string checks_json(const std::vector<CheckRow>& rows) {
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;
  std::ostringstream os;
  os << "{\n  \"kind\": \"invariant_checks\",\n";
  os << "  \"total\": " << rows.size() << ",\n";
  os << "  \"failed\": " << failed << ",\n";
  os << "  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CheckRow& r = rows[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"id\": " << quoted(r.id) << ", \"location\": " << quoted(r.location)
       << ", \"pass\": " << (r.pass ? "true" : "false") << ", \"lhs\": "
       << quoted(r.lhs) << ", \"rhs\": " << quoted(r.rhs) << "}";
  }
  os << (rows.empty() ? "" : "\n  ") << "]\n}\n";
  return os.str();
}

std::string arrival_csv(const EquilibriumTrace& trace) {
  std::ostringstream os;
  os << "tau_start,tau_end,rate,tau_start_float,tau_end_float,rate_float\n";
  for (const auto& seg : arrival_curve(trace)) {
    os << seg.tau_start.str() << "," << seg.tau_end.str() << ","
       << seg.rate.str() << "," << fl(seg.tau_start) << "," << fl(seg.tau_end)
       << "," << fl(seg.rate) << "\n";
  }
  return os.str();
}

}  // namespace flowtime
