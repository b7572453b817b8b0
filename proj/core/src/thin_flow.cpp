#include "flowtime/thin_flow.hpp"

#include <algorithm>
#include <set>

#include "flowtime/errors.hpp"

namespace flowtime {

namespace {

constexpr long kAttemptBudget = 3000000;

enum Rel : unsigned char { kEq = 0, kGt = 1, kLt = 2 };

// Exact Gaussian elimination. Returns nullopt when the system is singular or
// inconsistent.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> aug, int n) {
  int rows = static_cast<int>(aug.size());
  int row = 0;
  std::vector<int> pivot_of_col(n, -1);
  for (int col = 0; col < n && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (!aug[r][col].is_zero()) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(aug[row], aug[pr]);
    Rat inv = Rat(1) / aug[row][col];
    for (int c = col; c <= n; ++c) aug[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || aug[r][col].is_zero()) continue;
      Rat f = aug[r][col];
      for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[row][c];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (int r = row; r < rows; ++r)
    if (!aug[r][n].is_zero()) return std::nullopt;  // inconsistent
  for (int col = 0; col < n; ++col)
    if (pivot_of_col[col] < 0) return std::nullopt;  // underdetermined
  std::vector<Rat> x(n);
  for (int col = 0; col < n; ++col) x[col] = aug[pivot_of_col[col]][n];
  return x;
}

// Deterministic max-flow (BFS augmenting paths) used for the bounded-flow
// feasibility step. Arc order is insertion order.
struct FeasFlow {
  struct Arc { int to; Rat cap; Rat flow; int rev; };
  std::vector<std::vector<Arc>> adj;

  explicit FeasFlow(int n) : adj(n) {}
  void add(int u, int v, const Rat& cap) {
    adj[u].push_back({v, cap, Rat(0), static_cast<int>(adj[v].size())});
    adj[v].push_back({u, Rat(0), Rat(0), static_cast<int>(adj[u].size()) - 1});
  }
  Rat run(int s, int t) {
    Rat total(0);
    while (true) {
      std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
      std::vector<int> queue{s};
      parent[s] = {s, 0};
      for (std::size_t qi = 0; qi < queue.size() && parent[t].first < 0; ++qi) {
        int u = queue[qi];
        for (std::size_t ai = 0; ai < adj[u].size(); ++ai) {
          const Arc& a = adj[u][ai];
          if (parent[a.to].first >= 0 || a.cap - a.flow <= Rat(0)) continue;
          parent[a.to] = {u, static_cast<int>(ai)};
          queue.push_back(a.to);
        }
      }
      if (parent[t].first < 0) break;
      Rat bottleneck;
      bool first = true;
      for (int v = t; v != s;) {
        auto [u, ai] = parent[v];
        Rat res = adj[u][ai].cap - adj[u][ai].flow;
        bottleneck = first ? res : min(bottleneck, res);
        first = false;
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, ai] = parent[v];
        adj[u][ai].flow += bottleneck;
        adj[adj[u][ai].to][adj[u][ai].rev].flow -= bottleneck;
        v = u;
      }
      total += bottleneck;
    }
    return total;
  }
};

struct Solver {
  const ThinFlowProblem& p;
  int n, m;
  std::map<std::string, int> node_ix;
  std::vector<std::vector<int>> out_e, in_e;
  std::vector<int> topo;               // node indices
  std::vector<bool> core_node, core_edge;
  std::vector<int> slots;              // core unqueued edge indices, id order
  int src, snk;

  long attempts = 0;
  std::set<std::vector<unsigned char>> tried;

  explicit Solver(const ThinFlowProblem& prob) : p(prob) {
    n = static_cast<int>(p.nodes.size());
    m = static_cast<int>(p.edges.size());
    for (int i = 0; i < n; ++i) node_ix[p.nodes[i]] = i;
    if (!node_ix.count(p.source) || !node_ix.count(p.sink))
      throw InternalError("thin flow problem missing source or sink node");
    src = node_ix[p.source];
    snk = node_ix[p.sink];
    out_e.assign(n, {});
    in_e.assign(n, {});
    for (int e = 0; e < m; ++e) {
      out_e[node_ix.at(p.edges[e].tail)].push_back(e);
      in_e[node_ix.at(p.edges[e].head)].push_back(e);
    }

    std::vector<int> indeg(n, 0);
    for (int e = 0; e < m; ++e) indeg[head(e)]++;
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      int v = ready.front();
      ready.erase(ready.begin());
      topo.push_back(v);
      for (int e : out_e[v])
        if (--indeg[head(e)] == 0) ready.push_back(head(e));
    }
    if (static_cast<int>(topo.size()) != n)
      throw InternalError("tight subgraph is cyclic");

    // Flow-carrying core: forward-reachable from source and backward to sink.
    std::vector<bool> fwd(n, false), bwd(n, false);
    fwd[src] = true;
    for (int v : topo)
      if (fwd[v])
        for (int e : out_e[v]) fwd[head(e)] = true;
    bwd[snk] = true;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
      if (bwd[*it])
        for (int e : in_e[*it]) bwd[tail(e)] = true;
    if (!fwd[snk])
      throw InternalError("sink not reachable in tight subgraph");

    core_node.assign(n, false);
    for (int v = 0; v < n; ++v) core_node[v] = fwd[v] && bwd[v];
    core_edge.assign(m, false);
    for (int e = 0; e < m; ++e)
      core_edge[e] = fwd[tail(e)] && bwd[head(e)];
    for (int e = 0; e < m; ++e)
      if (core_edge[e] && !p.edges[e].queued) slots.push_back(e);
  }

  int tail(int e) const { return node_ix.at(p.edges[e].tail); }
  int head(int e) const { return node_ix.at(p.edges[e].head); }

  // --- pattern evaluation ------------------------------------------------

  std::optional<ThinFlowResult> try_pattern(const std::vector<unsigned char>& pat) {
    if (!tried.insert(pat).second) return std::nullopt;
    if (++attempts > kAttemptBudget)
      throw SolverError("thin flow pattern search exhausted its budget");

    std::vector<Rel> rel(m, kEq);  // relation per edge; queued edges unused
    for (std::size_t i = 0; i < slots.size(); ++i)
      rel[slots[i]] = static_cast<Rel>(pat[i]);

    // Min-attainment: every core node but the source needs an incoming core
    // edge that realizes its slope (queued, "=", or ">").
    for (int v = 0; v < n; ++v) {
      if (!core_node[v] || v == src) continue;
      bool attained = false;
      for (int e : in_e[v]) {
        if (!core_edge[e]) continue;
        if (p.edges[e].queued || rel[e] == kEq || rel[e] == kGt) {
          attained = true;
          break;
        }
      }
      if (!attained) return std::nullopt;
    }

    // Plateaus: contract "=" edges.
    std::vector<int> uf(n);
    for (int v = 0; v < n; ++v) uf[v] = v;
    auto find = [&](int v) {
      while (uf[v] != v) v = uf[v] = uf[uf[v]];
      return v;
    };
    for (int e = 0; e < m; ++e)
      if (core_edge[e] && !p.edges[e].queued && rel[e] == kEq)
        uf[find(tail(e))] = find(head(e));

    std::vector<int> plateau(n, -1);
    std::vector<int> reps;
    for (int v = 0; v < n; ++v) {
      if (!core_node[v]) continue;
      int r = find(v);
      if (plateau[r] < 0) {
        plateau[r] = static_cast<int>(reps.size());
        reps.push_back(r);
      }
      plateau[v] = plateau[r];
    }
    int src_pl = plateau[src];

    // Unknown slot per plateau except the source plateau (slope fixed at 1).
    int unknowns = 0;
    std::vector<int> var_of(reps.size(), -1);
    for (std::size_t pl = 0; pl < reps.size(); ++pl)
      if (static_cast<int>(pl) != src_pl) var_of[pl] = unknowns++;

    auto forced = [&](int e) {
      return core_edge[e] && (p.edges[e].queued || rel[e] == kGt);
    };

    std::vector<Rat> labels_by_plateau(reps.size(), Rat(0));
    if (unknowns > 0) {
      std::vector<std::vector<Rat>> aug;
      for (std::size_t pl = 0; pl < reps.size(); ++pl) {
        if (static_cast<int>(pl) == src_pl) continue;
        std::vector<Rat> row(unknowns + 1, Rat(0));
        if (plateau[snk] == static_cast<int>(pl)) row[unknowns] -= p.inflow;
        for (int e = 0; e < m; ++e) {
          if (!forced(e)) continue;
          int pt = plateau[tail(e)], ph = plateau[head(e)];
          if (pt == static_cast<int>(pl) && ph != static_cast<int>(pl)) {
            if (ph == src_pl) row[unknowns] -= p.edges[e].capacity;  // x = c * 1
            else row[var_of[ph]] += p.edges[e].capacity;
          }
          if (ph == static_cast<int>(pl) && pt != static_cast<int>(pl))
            row[var_of[ph]] -= p.edges[e].capacity;
        }
        aug.push_back(std::move(row));
      }
      auto sol = solve_linear(std::move(aug), unknowns);
      if (!sol) return std::nullopt;
      for (std::size_t pl = 0; pl < reps.size(); ++pl)
        labels_by_plateau[pl] =
            static_cast<int>(pl) == src_pl ? Rat(1) : (*sol)[var_of[pl]];
    } else {
      labels_by_plateau[src_pl] = Rat(1);
    }

    for (const Rat& l : labels_by_plateau)
      if (l < Rat(0)) return std::nullopt;

    auto slope_of_node = [&](int v) { return labels_by_plateau[plateau[v]]; };

    // Sign consistency on pattern edges.
    for (int e : slots) {
      Rat lt = slope_of_node(tail(e)), lh = slope_of_node(head(e));
      if (rel[e] == kGt && !(lh > lt)) return std::nullopt;
      if (rel[e] == kLt && !(lh < lt)) return std::nullopt;
    }

    // Forced flows; free "=" edges solved by bounded-flow feasibility.
    std::vector<Rat> x(m, Rat(0));
    for (int e = 0; e < m; ++e)
      if (forced(e)) x[e] = p.edges[e].capacity * slope_of_node(head(e));

    std::vector<Rat> imbalance(n, Rat(0));  // required out - in over free edges
    imbalance[src] += p.inflow;
    imbalance[snk] -= p.inflow;
    for (int e = 0; e < m; ++e) {
      if (!forced(e)) continue;
      imbalance[tail(e)] -= x[e];
      imbalance[head(e)] += x[e];
    }

    std::vector<int> free_edges;
    for (int e : slots)
      if (rel[e] == kEq) free_edges.push_back(e);

    FeasFlow ff(n + 2);
    int S = n, T = n + 1;
    std::vector<std::pair<int, int>> free_arc;  // (node, arc index) per free edge
    Rat need(0);
    for (int v = 0; v < n; ++v) {
      if (!core_node[v]) {
        if (!imbalance[v].is_zero())
          throw InternalError("forced flow touches a non-core node");
        continue;
      }
      if (imbalance[v] > Rat(0)) {
        ff.add(S, v, imbalance[v]);
        need += imbalance[v];
      } else if (imbalance[v] < Rat(0)) {
        ff.add(v, T, -imbalance[v]);
      }
    }
    for (int e : free_edges) {
      free_arc.emplace_back(tail(e), static_cast<int>(ff.adj[tail(e)].size()));
      ff.add(tail(e), head(e), p.edges[e].capacity * slope_of_node(head(e)));
    }
    if (ff.run(S, T) != need) return std::nullopt;
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
      const auto& [u, ai] = free_arc[i];
      x[free_edges[i]] = ff.adj[u][ai].flow;
      if (x[free_edges[i]] < Rat(0)) return std::nullopt;
    }

    // Assemble: zero rate off the core, post-hoc slopes for non-core nodes.
    ThinFlowResult result;
    std::vector<Rat> slope(n, Rat(0));
    std::vector<bool> have(n, false);
    for (int v = 0; v < n; ++v)
      if (core_node[v]) {
        slope[v] = slope_of_node(v);
        have[v] = true;
      }
    for (int v : topo) {
      if (have[v]) continue;
      if (v == src) {
        slope[v] = Rat(1);
        have[v] = true;
        continue;
      }
      bool queued_in = false;
      bool any = false;
      Rat best(0);
      for (int e : in_e[v]) {
        if (p.edges[e].queued) { queued_in = true; break; }
        int u = tail(e);
        if (!have[u]) throw InternalError("post-hoc slope order broken");
        if (!any || slope[u] < best) best = slope[u];
        any = true;
      }
      if (!any && !queued_in)
        throw InternalError("node \"" + p.nodes[v] + "\" has no incoming tight edge");
      slope[v] = queued_in ? Rat(0) : best;
      have[v] = true;
    }

    for (int e = 0; e < m; ++e) result.rate_flow[p.edges[e].id] = x[e];
    for (int v = 0; v < n; ++v) result.label_slopes[p.nodes[v]] = slope[v];

    if (!verify_thin_flow(p, result).ok) return std::nullopt;
    return result;
  }

  // --- water-filling proposal --------------------------------------------

  std::vector<unsigned char> pattern_from_labels(const std::vector<Rat>& slope) const {
    std::vector<unsigned char> pat(slots.size(), kEq);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      int e = slots[i];
      if (slope[head(e)] > slope[tail(e)]) pat[i] = kGt;
      else if (slope[head(e)] < slope[tail(e)]) pat[i] = kLt;
    }
    return pat;
  }

  std::optional<ThinFlowResult> iterate(const std::map<std::string, Rat>* hint) {
    std::vector<Rat> slope(n, Rat(1));
    if (hint)
      for (int v = 0; v < n; ++v) {
        auto it = hint->find(p.nodes[v]);
        if (it != hint->end() && it->second >= Rat(0)) slope[v] = it->second;
      }
    slope[src] = Rat(1);

    for (int iter = 0; iter < 30; ++iter) {
      // Flow step: push the inflow down the core, water-filling per node.
      std::vector<Rat> y(m, Rat(0)), surplus(n, Rat(0));
      surplus[src] = p.inflow;
      for (int v : topo) {
        if (!core_node[v] || v == snk || surplus[v] <= Rat(0)) continue;
        Rat S = surplus[v], lv = slope[v];
        Rat cq(0), cn(0);
        for (int e : out_e[v]) {
          if (!core_edge[e]) continue;
          (p.edges[e].queued ? cq : cn) += p.edges[e].capacity;
        }
        if (cq + cn <= Rat(0)) throw InternalError("core node with no core out edge");
        // Fill queued edges first (their implied head slope rate/c can sit
        // below lv); unqueued edges join once the common level reaches lv.
        if (!cq.is_zero() && S <= cq * lv) {
          Rat level = S / cq;
          for (int e : out_e[v])
            if (core_edge[e] && p.edges[e].queued) y[e] = p.edges[e].capacity * level;
        } else if (S >= (cq + cn) * lv) {
          Rat level = S / (cq + cn);
          for (int e : out_e[v])
            if (core_edge[e]) y[e] = p.edges[e].capacity * level;
        } else {
          Rat spill = S - cq * lv;  // cn > 0 here, spill in (0, cn*lv)
          for (int e : out_e[v]) {
            if (!core_edge[e]) continue;
            y[e] = p.edges[e].queued ? p.edges[e].capacity * lv
                                     : p.edges[e].capacity * spill / cn;
          }
        }
        // Normalize so the node exactly forwards its surplus.
        Rat tot(0);
        for (int e : out_e[v])
          if (core_edge[e]) tot += y[e];
        if (tot.is_zero()) continue;
        Rat scale = S / tot;
        for (int e : out_e[v])
          if (core_edge[e]) {
            y[e] *= scale;
            surplus[head(e)] += y[e];
          }
      }

      // Label step.
      std::vector<Rat> next(n, Rat(0));
      next[src] = Rat(1);
      for (int v : topo) {
        if (v == src || !core_node[v]) continue;
        bool any = false;
        Rat best(0);
        for (int e : in_e[v]) {
          if (!core_edge[e]) continue;
          Rat implied;
          if (p.edges[e].queued) implied = y[e] / p.edges[e].capacity;
          else if (y[e] > Rat(0)) implied = max(next[tail(e)], y[e] / p.edges[e].capacity);
          else implied = next[tail(e)];
          if (!any || implied < best) best = implied;
          any = true;
        }
        next[v] = any ? best : Rat(0);
      }
      bool same = true;
      for (int v = 0; v < n; ++v)
        if (core_node[v] && next[v] != slope[v]) { same = false; break; }
      slope = next;

      auto sol = try_pattern(pattern_from_labels(slope));
      if (sol) return sol;
      if (same) break;  // fixed point reached but pattern unsolvable; move on
    }
    return std::nullopt;
  }

  // --- ring search and exhaustive enumeration -----------------------------

  std::optional<ThinFlowResult> ring_search(std::vector<std::vector<unsigned char>> seeds) {
    for (int radius = 1; radius <= 2; ++radius) {
      for (const auto& seed : seeds) {
        std::vector<std::size_t> idx(radius);
        std::optional<ThinFlowResult> found;
        auto rec = [&](auto&& self, std::size_t start, int depth) -> bool {
          if (depth == radius) {
            std::vector<unsigned char> pat = seed;
            // All combinations of replacement values on the chosen slots.
            std::vector<int> vals(radius, 0);
            while (true) {
              bool skip = false;
              for (int d = 0; d < radius; ++d)
                if (static_cast<unsigned char>(vals[d]) == seed[idx[d]]) skip = true;
              if (!skip) {
                for (int d = 0; d < radius; ++d)
                  pat[idx[d]] = static_cast<unsigned char>(vals[d]);
                auto sol = try_pattern(pat);
                if (sol) { found = std::move(sol); return true; }
                for (int d = 0; d < radius; ++d) pat[idx[d]] = seed[idx[d]];
              }
              int d = radius - 1;
              while (d >= 0 && ++vals[d] == 3) vals[d--] = 0;
              if (d < 0) break;
            }
            return false;
          }
          for (std::size_t i = start; i < seed.size(); ++i) {
            idx[depth] = i;
            if (self(self, i + 1, depth + 1)) return true;
          }
          return false;
        };
        if (rec(rec, 0, 0)) return found;
      }
    }
    return std::nullopt;
  }

  std::optional<ThinFlowResult> dfs_all() {
    std::vector<unsigned char> pat(slots.size(), kEq);
    // Incremental min-attainment bookkeeping: count assigned non-"<" incoming
    // core slots per node; nodes with queued incoming are always fine.
    std::vector<int> remaining_in(n, 0), non_lt_in(n, 0);
    std::vector<bool> safe(n, false);
    for (int v = 0; v < n; ++v) {
      if (!core_node[v] || v == src) { safe[v] = true; continue; }
      for (int e : in_e[v])
        if (core_edge[e] && p.edges[e].queued) safe[v] = true;
    }
    for (int e : slots) remaining_in[head(e)]++;

    std::optional<ThinFlowResult> found;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == slots.size()) {
        auto sol = try_pattern(pat);
        if (sol) { found = std::move(sol); return true; }
        return false;
      }
      int w = head(slots[i]);
      for (unsigned char val : {kEq, kGt, kLt}) {
        pat[i] = val;
        remaining_in[w]--;
        if (val != kLt) non_lt_in[w]++;
        bool viable = safe[w] || non_lt_in[w] > 0 || remaining_in[w] > 0;
        if (viable && self(self, i + 1)) return true;
        remaining_in[w]++;
        if (val != kLt) non_lt_in[w]--;
      }
      return false;
    };
    if (rec(rec, 0)) return found;
    return std::nullopt;
  }

  ThinFlowResult solve(const std::map<std::string, Rat>* hint) {
    if (auto sol = iterate(hint)) return *sol;
    std::vector<std::vector<unsigned char>> seeds(tried.begin(), tried.end());
    if (seeds.empty()) seeds.push_back(std::vector<unsigned char>(slots.size(), kEq));
    if (auto sol = ring_search(std::move(seeds))) return *sol;
    if (auto sol = dfs_all()) return *sol;
    throw SolverError("no verified rate flow found for tight subgraph");
  }
};

}  // namespace

ThinFlowResult solve_thin_flow(const ThinFlowProblem& p,
                               const std::map<std::string, Rat>* label_hint) {
  if (p.inflow <= Rat(0)) throw DomainError("thin flow inflow must be positive");
  Solver solver(p);
  return solver.solve(label_hint);
}

ThinFlowCheck verify_thin_flow(const ThinFlowProblem& p, const ThinFlowResult& r) {
  ThinFlowCheck check;
  auto fail = [&](const std::string& msg) { check.violations.push_back(msg); };

  auto slope = [&](const std::string& node) -> const Rat& {
    auto it = r.label_slopes.find(node);
    if (it == r.label_slopes.end())
      throw InternalError("missing label slope for node \"" + node + "\"");
    return it->second;
  };
  auto rate = [&](const std::string& edge) -> const Rat& {
    auto it = r.rate_flow.find(edge);
    if (it == r.rate_flow.end())
      throw InternalError("missing rate for edge \"" + edge + "\"");
    return it->second;
  };

  if (slope(p.source) != Rat(1)) fail("source label slope is not 1");

  std::map<std::string, Rat> balance;
  for (const auto& node : p.nodes) balance[node] = Rat(0);
  for (const auto& e : p.edges) {
    const Rat& x = rate(e.id);
    if (x < Rat(0)) fail("negative rate on edge \"" + e.id + "\"");
    balance[e.tail] += x;
    balance[e.head] -= x;
  }
  for (const auto& node : p.nodes) {
    Rat expect(0);
    if (node == p.source) expect = p.inflow;
    if (node == p.sink) expect = -p.inflow;
    if (balance[node] != expect)
      fail("conservation violated at node \"" + node + "\"");
  }

  for (const auto& node : p.nodes)
    if (slope(node) < Rat(0))
      fail("negative label slope at node \"" + node + "\"");

  for (const auto& e : p.edges) {
    const Rat& x = rate(e.id);
    const Rat& lv = slope(e.tail);
    const Rat& lw = slope(e.head);
    if (e.queued) {
      if (lw * e.capacity != x)
        fail("queued edge \"" + e.id + "\": head slope != rate/capacity");
    } else if (x > Rat(0)) {
      if (lw != max(lv, x / e.capacity))
        fail("edge \"" + e.id + "\": head slope != max(tail slope, rate/capacity)");
    } else {
      if (lw > lv)
        fail("idle edge \"" + e.id + "\": head slope exceeds tail slope");
    }
  }

  check.ok = check.violations.empty();
  return check;
}

}  // namespace flowtime
