#include "flowtime/oracle.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

// Exact row reduction of [A | b]; unique solution or nullopt.
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> a,
                                            std::vector<Rat> b, size_t cols) {
  size_t rows = a.size();
  std::vector<int> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t sel = rank;
    while (sel < rows && a[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[rank]);
    std::swap(b[sel], b[rank]);
    Rat inv = Rat(1) / a[rank][c];
    for (size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
    b[rank] = b[rank] * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      Rat f = a[r][c];
      for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
      b[r] = b[r] - f * b[rank];
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;  // inconsistent
  std::vector<Rat> x(cols, Rat(0));
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] < 0) return std::nullopt;  // underdetermined
    x[c] = b[pivot_of_col[c]];
  }
  return x;
}

enum class Fix { Empty, Full, Free };

struct Vertex {
  Rat value;
  Rat cost;
};

// The engine models the source release rate as an arc of capacity
// inflow_rate in front of the source; the enumeration needs the same arc or
// it admits flows the source can never emit.
Network with_inflow_arc(const Network& net) {
  Network ext = net;
  std::string super = "__source";
  while (ext.has_node(super)) super += "_";
  std::string arc = "__inflow";
  while (ext.find_edge(arc)) arc += "_";
  ext.nodes.insert(ext.nodes.begin(), super);
  ext.edges.push_back({arc, super, net.source, net.inflow_rate, Rat(0)});
  ext.source = super;
  return ext;
}

// Visit every vertex candidate. With fix_value set, flow value is pinned to
// *fix_value (conservation at all nodes but the sink); otherwise the value
// is whatever conservation yields.
template <typename F>
void for_each_vertex(const Network& net, const Rat* fix_value, F&& visit) {
  size_t m = net.edges.size();
  if (m > 12)
    throw DomainError("exhaustive enumeration limited to 12 edges");
  std::vector<std::string> inner;
  for (const auto& n : net.nodes)
    if (n != net.source && n != net.sink) inner.push_back(n);
  std::map<std::string, size_t> row_of;
  for (size_t i = 0; i < inner.size(); ++i) row_of[inner[i]] = i;
  size_t rows = inner.size() + (fix_value ? 1 : 0);
  size_t src_row = inner.size();

  std::vector<Fix> fix(m, Fix::Empty);
  std::vector<size_t> free_ix;
  while (true) {
    free_ix.clear();
    for (size_t i = 0; i < m; ++i)
      if (fix[i] == Fix::Free) free_ix.push_back(i);

    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(free_ix.size(), Rat(0)));
    std::vector<Rat> rhs(rows, Rat(0));
    auto stamp = [&](size_t row, size_t edge, int sgn) {
      const Edge& e = net.edges[edge];
      if (fix[edge] == Fix::Free) {
        auto it = std::find(free_ix.begin(), free_ix.end(), edge);
        A[row][it - free_ix.begin()] =
            A[row][it - free_ix.begin()] + Rat(sgn);
      } else if (fix[edge] == Fix::Full) {
        rhs[row] = rhs[row] - Rat(sgn) * e.capacity;
      }
    };
    for (size_t i = 0; i < m; ++i) {
      const Edge& e = net.edges[i];
      if (row_of.count(e.tail)) stamp(row_of[e.tail], i, +1);
      if (row_of.count(e.head)) stamp(row_of[e.head], i, -1);
      if (fix_value && e.tail == net.source) stamp(src_row, i, +1);
      if (fix_value && e.head == net.source) stamp(src_row, i, -1);
    }
    if (fix_value) rhs[src_row] = rhs[src_row] + *fix_value;

    bool ok = true;
    std::vector<Rat> x(m, Rat(0));
    for (size_t i = 0; i < m; ++i)
      if (fix[i] == Fix::Full) x[i] = net.edges[i].capacity;
    if (free_ix.empty()) {
      for (size_t r = 0; r < rows && ok; ++r)
        if (!rhs[r].is_zero()) ok = false;
    } else if (auto sol = solve_exact(A, rhs, free_ix.size())) {
      for (size_t k = 0; k < free_ix.size() && ok; ++k) {
        const Rat& v = (*sol)[k];
        if (v.sign() < 0 || v > net.edges[free_ix[k]].capacity) ok = false;
        x[free_ix[k]] = v;
      }
    } else {
      ok = false;
    }
    if (ok) {
      Vertex vx;
      vx.value = Rat(0);
      vx.cost = Rat(0);
      for (size_t i = 0; i < m; ++i) {
        const Edge& e = net.edges[i];
        if (e.tail == net.source) vx.value = vx.value + x[i];
        if (e.head == net.source) vx.value = vx.value - x[i];
        vx.cost = vx.cost + x[i] * e.delay;
      }
      visit(vx);
    }

    size_t carry = 0;
    while (carry < m) {
      if (fix[carry] == Fix::Empty) {
        fix[carry] = Fix::Full;
        break;
      }
      if (fix[carry] == Fix::Full) {
        fix[carry] = Fix::Free;
        break;
      }
      fix[carry] = Fix::Empty;
      ++carry;
    }
    if (carry == m) break;
  }
}

}  // namespace

Rat brute_max_flow(const Network& net) {
  std::vector<std::string> inner;
  for (const auto& n : net.nodes)
    if (n != net.source && n != net.sink) inner.push_back(n);
  if (inner.size() > 20)
    throw DomainError("cut enumeration limited to 20 interior nodes");
  Rat best = net.inflow_rate;
  for (size_t mask = 0; mask < (size_t(1) << inner.size()); ++mask) {
    std::map<std::string, bool> in_s;
    in_s[net.source] = true;
    for (size_t i = 0; i < inner.size(); ++i)
      if (mask & (size_t(1) << i)) in_s[inner[i]] = true;
    Rat cap(0);
    for (const auto& e : net.edges)
      if (in_s.count(e.tail) && !in_s.count(e.head)) cap = cap + e.capacity;
    best = min(best, cap);
  }
  return best;
}

std::optional<Rat> brute_min_cost(const Network& net, const Rat& value) {
  Network ext = with_inflow_arc(net);
  std::optional<Rat> best;
  for_each_vertex(ext, &value, [&](const Vertex& v) {
    if (!best || v.cost < *best) best = v.cost;
  });
  return best;
}

Rat brute_max_value(const Network& net, const Rat& horizon) {
  if (horizon.sign() < 0) throw DomainError("negative horizon");
  Network ext = with_inflow_arc(net);
  Rat best(0);
  for_each_vertex(ext, nullptr, [&](const Vertex& v) {
    best = max(best, horizon * v.value - v.cost);
  });
  return best;
}

std::optional<Rat> brute_horizon(const Network& net) {
  Network ext = with_inflow_arc(net);
  std::optional<Rat> best;
  const Rat& demand = net.demand;
  for_each_vertex(ext, nullptr, [&](const Vertex& v) {
    if (v.value.sign() <= 0) return;
    Rat t = (demand + v.cost) / v.value;
    if (!best || t < *best) best = t;
  });
  return best;
}

}  // namespace flowtime
