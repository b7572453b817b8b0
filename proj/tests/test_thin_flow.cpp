#include "doctest.h"

#include "flowtime/errors.hpp"
#include "flowtime/thin_flow.hpp"

using namespace flowtime;

namespace {

// The three tight subgraphs the branch() fixture walks through, with the
// queued set growing phase by phase.
ThinFlowProblem phase1() {
  ThinFlowProblem p;
  p.nodes = {"s", "v", "t"};
  p.edges = {{"e1", "s", "v", Rat(2), false}, {"e2", "v", "t", Rat(1), false}};
  p.source = "s";
  p.sink = "t";
  p.inflow = Rat(3);
  return p;
}

ThinFlowProblem phase2() {
  ThinFlowProblem p = phase1();
  p.edges[0].queued = true;
  p.edges[1].queued = true;
  p.edges.push_back({"e4", "s", "t", Rat(1), false});
  return p;
}

ThinFlowProblem phase3() {
  ThinFlowProblem p = phase2();
  p.edges.insert(p.edges.begin() + 2, {"e3", "v", "t", Rat(1), false});
  p.edges[3].queued = true;  // e4 carries a queue by now
  return p;
}

}  // namespace

TEST_SUITE("thin_flow") {

TEST_CASE("free congestion splits by capacity") {
  ThinFlowResult r = solve_thin_flow(phase1());
  CHECK(r.rate_flow.at("e1") == Rat(3));
  CHECK(r.rate_flow.at("e2") == Rat(3));
  CHECK(r.label_slopes.at("s") == Rat(1));
  CHECK(r.label_slopes.at("v") == Rat(3, 2));
  CHECK(r.label_slopes.at("t") == Rat(3));
  CHECK(verify_thin_flow(phase1(), r).ok);
}

TEST_CASE("queued edges pin slopes to their drain rate") {
  ThinFlowResult r = solve_thin_flow(phase2());
  CHECK(r.rate_flow.at("e1") == Rat(3, 2));
  CHECK(r.rate_flow.at("e2") == Rat(3, 2));
  CHECK(r.rate_flow.at("e4") == Rat(3, 2));
  CHECK(r.label_slopes.at("v") == Rat(3, 4));
  CHECK(r.label_slopes.at("t") == Rat(3, 2));
  CHECK(verify_thin_flow(phase2(), r).ok);
}

TEST_CASE("full subgraph settles at slope one everywhere") {
  ThinFlowResult r = solve_thin_flow(phase3());
  CHECK(r.rate_flow.at("e1") == Rat(2));
  CHECK(r.rate_flow.at("e2") == Rat(1));
  CHECK(r.rate_flow.at("e3") == Rat(1));
  CHECK(r.rate_flow.at("e4") == Rat(1));
  CHECK(r.label_slopes.at("s") == Rat(1));
  CHECK(r.label_slopes.at("v") == Rat(1));
  CHECK(r.label_slopes.at("t") == Rat(1));
  CHECK(verify_thin_flow(phase3(), r).ok);
}

TEST_CASE("a label hint does not change the solution") {
  ThinFlowResult cold = solve_thin_flow(phase2());
  ThinFlowResult warm = solve_thin_flow(phase2(), &cold.label_slopes);
  CHECK(cold.rate_flow == warm.rate_flow);
  CHECK(cold.label_slopes == warm.label_slopes);
}

TEST_CASE("verification catches broken conservation") {
  ThinFlowResult r = solve_thin_flow(phase2());
  r.rate_flow["e4"] = Rat(2);  // source now emits 3/2 + 2 != 3
  ThinFlowCheck c = verify_thin_flow(phase2(), r);
  CHECK(!c.ok);
  CHECK(!c.violations.empty());
}

TEST_CASE("verification catches a wrong queued slope") {
  ThinFlowResult r = solve_thin_flow(phase2());
  r.label_slopes["t"] = Rat(2);  // queued e2 demands rate/capacity = 3/2
  CHECK(!verify_thin_flow(phase2(), r).ok);
}

TEST_CASE("no edges cannot carry a positive value") {
  ThinFlowProblem p;
  p.nodes = {"s", "t"};
  p.source = "s";
  p.sink = "t";
  p.inflow = Rat(3);
  ThinFlowResult empty;
  empty.label_slopes = {{"s", Rat(1)}, {"t", Rat(1)}};
  CHECK(!verify_thin_flow(p, empty).ok);
}

}  // TEST_SUITE
