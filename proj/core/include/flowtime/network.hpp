#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowtime/rational.hpp"

namespace flowtime {

struct Edge {
  std::string id;
  std::string tail;
  std::string head;
  Rat capacity;   // > 0 after validation (zero-capacity edges are pruned)
  Rat delay;      // >= 0
};

/**
 * Directed network with a single source/sink pair, a constant source inflow
 * rate and a total demand to route. Edges may be parallel; the graph must be
 * acyclic. `validate` returns the canonical form: edges sorted by id, every
 * node and edge on some source-sink path, zero-capacity edges removed.
 */
struct Network {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::string source;
  std::string sink;
  Rat inflow_rate;   // rate at which demand leaves the source
  Rat demand;        // total mass to route

  bool has_node(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;
};

// Structural and domain checks; returns the canonicalized network.
// Idempotent: validate(validate(n)) == validate(n).
Network validate(const Network& net);

// Dense-index view used by the solvers. Node and edge order follow the
// canonical network (nodes as listed, edges sorted by id).
struct Indexed {
  const Network* net = nullptr;
  std::map<std::string, int> node_index;
  std::map<std::string, int> edge_index;
  std::vector<std::vector<int>> out_edges;   // by node index, edge indices
  std::vector<std::vector<int>> in_edges;
  std::vector<int> topo_order;               // node indices, sources first
  int source = -1;
  int sink = -1;

  explicit Indexed(const Network& n);
  int tail_of(int e) const { return node_index.at(net->edges[e].tail); }
  int head_of(int e) const { return node_index.at(net->edges[e].head); }
};

}  // namespace flowtime
