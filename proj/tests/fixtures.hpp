#pragma once

#include "flowtime/network.hpp"

// Shared hand-checked instances. Every frozen number asserted in the suites
// comes from working these three networks out by hand.
namespace fx {

using flowtime::Network;
using flowtime::Rat;

// Single edge s->t, capacity 1, delay 1; inflow 1, demand 2. Nothing ever
// queues, so the equilibrium and the optimal routing coincide.
inline Network link() {
  Network n;
  n.nodes = {"s", "t"};
  n.edges = {{"e1", "s", "t", Rat(1), Rat(1)}};
  n.source = "s";
  n.sink = "t";
  n.inflow_rate = Rat(1);
  n.demand = Rat(2);
  return flowtime::validate(n);
}

// Three nodes, a wide feeder s->v, a parallel pair v->t (one free, one slow)
// and a slow bypass s->t; inflow 3, demand 11/2. The inflow overloads the
// free route, queues grow on e1/e2, and the slow edges join one by one.
// The full trace is known in closed form: events at 1/2, 5/6 and 11/6.
inline Network branch() {
  Network n;
  n.nodes = {"s", "v", "t"};
  n.edges = {
      {"e1", "s", "v", Rat(2), Rat(0)},
      {"e2", "v", "t", Rat(1), Rat(0)},
      {"e3", "v", "t", Rat(1), Rat(1)},
      {"e4", "s", "t", Rat(1), Rat(1)},
  };
  n.source = "s";
  n.sink = "t";
  n.inflow_rate = Rat(3);
  n.demand = Rat(11, 2);
  return flowtime::validate(n);
}

// Two parallel s->t edges, one fast and wide, one slow; inflow 2, demand 4.
// The optimal flow ignores the slow edge entirely, so capacity reduction
// prunes it.
inline Network twin() {
  Network n;
  n.nodes = {"s", "t"};
  n.edges = {
      {"fast", "s", "t", Rat(2), Rat(0)},
      {"slow", "s", "t", Rat(1), Rat(10)},
  };
  n.source = "s";
  n.sink = "t";
  n.inflow_rate = Rat(2);
  n.demand = Rat(4);
  return flowtime::validate(n);
}

}  // namespace fx
