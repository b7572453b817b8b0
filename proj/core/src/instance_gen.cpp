#include "flowtime/instance_gen.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "flowtime/errors.hpp"
#include "flowtime/quickest.hpp"

namespace flowtime {

namespace {

// std::uniform_int_distribution is not pinned across standard libraries;
// rejection sampling over the raw engine output is.
long draw(std::mt19937_64& gen, long lo, long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

}  // namespace

Network generate_instance(const GenConfig& cfg) {
  if (cfg.nodes < 2) throw DomainError("need at least source and sink");
  if (cfg.extra_edges < 0) throw DomainError("negative edge count");
  std::mt19937_64 gen(cfg.seed);

  std::vector<std::string> order;
  order.push_back("s");
  for (int i = 1; i + 1 < cfg.nodes; ++i) order.push_back("v" + std::to_string(i));
  order.push_back("t");
  int n = static_cast<int>(order.size());

  auto capacity = [&] { return Rat(draw(gen, 1, 8), 2); };
  auto delay = [&] {
    return cfg.zero_delays ? Rat(0) : Rat(draw(gen, 0, 4), 2);
  };

  Network net;
  net.nodes = order;
  net.source = "s";
  net.sink = "t";
  int next_id = 1;
  auto add_edge = [&](const std::string& a, const std::string& b) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%02d", next_id++);
    net.edges.push_back({buf, a, b, capacity(), delay()});
  };
  for (int i = 0; i + 1 < n; ++i) add_edge(order[i], order[i + 1]);
  for (int k = 0; k < cfg.extra_edges; ++k) {
    long a = draw(gen, 0, n - 2);
    long b = draw(gen, a + 1, n - 1);
    add_edge(order[a], order[b]);
  }

  // Probe the max flow with an unconstraining inflow, then pick the real
  // inflow as a fraction of it so the network can always carry it.
  Rat total(0);
  for (const auto& e : net.edges) total = total + e.capacity;
  net.inflow_rate = total + Rat(1);
  net.demand = Rat(1);
  Network probe = validate(net);
  Rat cut = max_flow_value(probe);
  if (cut.sign() <= 0) throw InternalError("generated network carries no flow");

  net.inflow_rate = cut * Rat(draw(gen, 1, 8), 8);
  net.demand = net.inflow_rate * Rat(draw(gen, 1, 12), 2);
  return validate(net);
}

}  // namespace flowtime
