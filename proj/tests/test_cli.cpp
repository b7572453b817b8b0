#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fixtures.hpp"
#include "flowtime/network_io.hpp"

using namespace flowtime;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("flowtime_cli_test_" + std::to_string(++counter) + "_" +
             std::to_string(::getpid()) + ".json"))
               .string();
    write_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(cli::RunConfig cfg) {
  std::ostringstream out, err;
  int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate echoes the canonical instance") {
  TempFile f(serialize_network(fx::branch()));
  cli::RunConfig cfg;
  cfg.command = "validate";
  cfg.instance_path = f.path;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(r.out == serialize_network(fx::branch()));
}

TEST_CASE("quickest reports the exact horizon") {
  TempFile f(serialize_network(fx::branch()));
  cli::RunConfig cfg;
  cfg.command = "quickest";
  cfg.instance_path = f.path;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"horizon\": \"5/2\""));
  CHECK(contains(r.out, "\"saturating\": true"));
}

TEST_CASE("equilibrium emits the full trace") {
  TempFile f(serialize_network(fx::branch()));
  cli::RunConfig cfg;
  cfg.command = "equilibrium";
  cfg.instance_path = f.path;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"completion_time\": \"3\""));
  CHECK(contains(r.out, "\"kind\": \"path_joined\", \"edge\": \"e3\", \"theta\": \"5/6\""));
  CHECK(contains(r.out, "\"index\": 2"));
}

TEST_CASE("pipeline report carries both ratios") {
  TempFile f(serialize_network(fx::branch()));
  cli::RunConfig cfg;
  cfg.command = "stackelberg";
  cfg.instance_path = f.path;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"time_ratio\": \"6/5\""));
  CHECK(contains(r.out, "\"horizon_preserved\": true"));
}

TEST_CASE("certify passes the fixtures") {
  for (const auto& n : {fx::link(), fx::branch(), fx::twin()}) {
    TempFile f(serialize_network(n));
    cli::RunConfig cfg;
    cfg.command = "certify";
    cfg.instance_path = f.path;
    cfg.dt = 1e-3;
    Run r = invoke(cfg);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"failed\": 0"));
  }
}

TEST_CASE("batch certifies seeded instances") {
  cli::RunConfig cfg;
  cfg.command = "batch";
  cfg.seed = 42;
  cfg.count = 5;
  cfg.nodes = 5;
  cfg.density = 2;
  cfg.jobs = 2;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"failed\": 0"));
  CHECK(contains(r.out, "\"seed\": 46"));
}

TEST_CASE("generate is deterministic") {
  cli::RunConfig cfg;
  cfg.command = "generate";
  cfg.seed = 11;
  cfg.nodes = 6;
  cfg.density = 3;
  Run a = invoke(cfg);
  Run b = invoke(cfg);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(validate(parse_network(a.out)).edges.size() >= 5);
}

TEST_CASE("--out writes the report to disk") {
  TempFile f(serialize_network(fx::link()));
  TempFile o("");
  cli::RunConfig cfg;
  cfg.command = "quickest";
  cfg.instance_path = f.path;
  cfg.out_path = o.path;
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(o.path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(contains(text, "\"horizon\": \"3\""));
}

TEST_CASE("error paths map to distinct exit codes") {
  SUBCASE("missing file is an io error") {
    cli::RunConfig cfg;
    cfg.command = "quickest";
    cfg.instance_path = "/nonexistent/instance.json";
    Run r = invoke(cfg);
    CHECK(r.code == 9);
    CHECK(contains(r.err, "\"error\": \"io\""));
  }
  SUBCASE("malformed json is a parse error") {
    TempFile f("{ not json");
    cli::RunConfig cfg;
    cfg.command = "validate";
    cfg.instance_path = f.path;
    Run r = invoke(cfg);
    CHECK(r.code == 2);
    CHECK(contains(r.err, "\"error\": \"parse\""));
  }
  SUBCASE("negative capacity is a domain error") {
    TempFile f(R"({"nodes": ["s","t"],
      "edges": [{"id":"e","tail":"s","head":"t","capacity":"-1","delay":0}],
      "source":"s","sink":"t","inflow_rate":1,"demand":1})");
    cli::RunConfig cfg;
    cfg.command = "validate";
    cfg.instance_path = f.path;
    Run r = invoke(cfg);
    CHECK(r.code == 4);
    CHECK(contains(r.err, "\"error\": \"domain\""));
  }
  SUBCASE("unreachable sink is a validation error") {
    TempFile f(R"({"nodes": ["s","t","u"],
      "edges": [{"id":"e","tail":"s","head":"u","capacity":1,"delay":0}],
      "source":"s","sink":"t","inflow_rate":1,"demand":1})");
    cli::RunConfig cfg;
    cfg.command = "quickest";
    cfg.instance_path = f.path;
    Run r = invoke(cfg);
    CHECK(r.code == 3);
    CHECK(contains(r.err, "\"error\": \"validation\""));
  }
  SUBCASE("unknown command is a domain error") {
    cli::RunConfig cfg;
    cfg.command = "frobnicate";
    Run r = invoke(cfg);
    CHECK(r.code == 4);
  }
  SUBCASE("missing instance flag is an io error") {
    cli::RunConfig cfg;
    cfg.command = "equilibrium";
    Run r = invoke(cfg);
    CHECK(r.code == 9);
  }
}

TEST_CASE("a failing check makes certify exit nonzero") {
  // Demand too large for the phase cap to finish: solver error propagates.
  TempFile f(serialize_network(fx::branch()));
  cli::RunConfig cfg;
  cfg.command = "certify";
  cfg.instance_path = f.path;
  cfg.phase_cap = 1;
  Run r = invoke(cfg);
  CHECK(r.code == 7);
  CHECK(contains(r.err, "\"error\": \"solver\""));
}

}  // TEST_SUITE
