#include "flowtime/network.hpp"

#include <algorithm>
#include <set>

#include "flowtime/errors.hpp"

namespace flowtime {

bool Network::has_node(const std::string& id) const {
  return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

const Edge* Network::find_edge(const std::string& id) const {
  for (const auto& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

// Kahn topological sort over the given edge set; throws on cycles.
std::vector<std::string> topo_sort(const std::vector<std::string>& nodes,
                                   const std::vector<Edge>& edges) {
  std::map<std::string, int> indeg;
  for (const auto& n : nodes) indeg[n] = 0;
  for (const auto& e : edges) indeg[e.head]++;
  std::vector<std::string> ready;
  for (const auto& n : nodes)
    if (indeg[n] == 0) ready.push_back(n);
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string n = ready.front();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& e : edges) {
      if (e.tail != n) continue;
      if (--indeg[e.head] == 0) ready.push_back(e.head);
    }
  }
  if (order.size() != nodes.size())
    throw ValidationError("network contains a directed cycle");
  return order;
}

std::set<std::string> reach_forward(const std::string& from, const std::vector<Edge>& edges) {
  std::set<std::string> seen{from};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges)
      if (seen.count(e.tail) && !seen.count(e.head)) {
        seen.insert(e.head);
        grew = true;
      }
  }
  return seen;
}

std::set<std::string> reach_backward(const std::string& to, const std::vector<Edge>& edges) {
  std::set<std::string> seen{to};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges)
      if (seen.count(e.head) && !seen.count(e.tail)) {
        seen.insert(e.tail);
        grew = true;
      }
  }
  return seen;
}

}  // namespace

Network validate(const Network& net) {
  if (net.source == net.sink)
    throw ValidationError("source and sink must differ");
  if (!net.has_node(net.source))
    throw ValidationError("source node \"" + net.source + "\" not in node list");
  if (!net.has_node(net.sink))
    throw ValidationError("sink node \"" + net.sink + "\" not in node list");
  if (net.inflow_rate <= Rat(0))
    throw ValidationError("inflow_rate must be positive");
  if (net.demand <= Rat(0))
    throw ValidationError("demand must be positive");

  std::set<std::string> node_set(net.nodes.begin(), net.nodes.end());
  if (node_set.size() != net.nodes.size())
    throw ValidationError("duplicate node id");

  std::set<std::string> edge_ids;
  for (const auto& e : net.edges) {
    if (!edge_ids.insert(e.id).second)
      throw ValidationError("duplicate edge id \"" + e.id + "\"");
    if (!node_set.count(e.tail))
      throw ValidationError("edge \"" + e.id + "\" has unknown tail \"" + e.tail + "\"");
    if (!node_set.count(e.head))
      throw ValidationError("edge \"" + e.id + "\" has unknown head \"" + e.head + "\"");
    if (e.tail == e.head)
      throw ValidationError("edge \"" + e.id + "\" is a self-loop");
    if (e.capacity < Rat(0))
      throw ValidationError("edge \"" + e.id + "\" has negative capacity");
    if (e.delay < Rat(0))
      throw ValidationError("edge \"" + e.id + "\" has negative delay");
  }

  topo_sort(net.nodes, net.edges);  // cycle check on the full edge set

  // Drop zero-capacity edges, then keep only edges on some source-sink path.
  std::vector<Edge> kept;
  for (const auto& e : net.edges)
    if (e.capacity > Rat(0)) kept.push_back(e);

  auto fwd = reach_forward(net.source, kept);
  auto bwd = reach_backward(net.sink, kept);
  if (!fwd.count(net.sink))
    throw ValidationError("sink unreachable from source");

  std::vector<Edge> pruned;
  for (const auto& e : kept)
    if (fwd.count(e.tail) && bwd.count(e.head)) pruned.push_back(e);

  std::sort(pruned.begin(), pruned.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });

  std::set<std::string> used{net.source, net.sink};
  for (const auto& e : pruned) {
    used.insert(e.tail);
    used.insert(e.head);
  }

  Network out;
  for (const auto& n : net.nodes)
    if (used.count(n)) out.nodes.push_back(n);
  out.edges = std::move(pruned);
  out.source = net.source;
  out.sink = net.sink;
  out.inflow_rate = net.inflow_rate;
  out.demand = net.demand;
  return out;
}

Indexed::Indexed(const Network& n) : net(&n) {
  for (std::size_t i = 0; i < n.nodes.size(); ++i)
    node_index[n.nodes[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < n.edges.size(); ++i)
    edge_index[n.edges[i].id] = static_cast<int>(i);
  out_edges.assign(n.nodes.size(), {});
  in_edges.assign(n.nodes.size(), {});
  for (std::size_t i = 0; i < n.edges.size(); ++i) {
    out_edges[node_index.at(n.edges[i].tail)].push_back(static_cast<int>(i));
    in_edges[node_index.at(n.edges[i].head)].push_back(static_cast<int>(i));
  }
  source = node_index.at(n.source);
  sink = node_index.at(n.sink);

  std::vector<int> indeg(n.nodes.size(), 0);
  for (const auto& e : n.edges) indeg[node_index.at(e.head)]++;
  std::vector<int> ready;
  for (std::size_t i = 0; i < n.nodes.size(); ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  while (!ready.empty()) {
    int v = ready.front();
    ready.erase(ready.begin());
    topo_order.push_back(v);
    for (int e : out_edges[v])
      if (--indeg[head_of(e)] == 0) ready.push_back(head_of(e));
  }
  if (topo_order.size() != n.nodes.size())
    throw InternalError("index build on cyclic network");
}

}  // namespace flowtime
