#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"flows-over-time engine: quickest flows, dynamic equilibria and "
               "capacity coordination with exact arithmetic"};
  app.require_subcommand(1);

  flowtime::cli::RunConfig cfg;

  auto with_instance = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", cfg.instance_path, "instance JSON file")
        ->required();
  };
  auto with_out = [&](CLI::App* sub) {
    sub->add_option("-o,--out", cfg.out_path, "write the report to this file");
  };
  auto with_phase_cap = [&](CLI::App* sub) {
    sub->add_option("--phase-cap", cfg.phase_cap,
                    "abort the simulation after this many phases (0 = default)");
  };
  auto with_gen = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "base RNG seed");
    sub->add_option("--nodes", cfg.nodes, "nodes per generated instance");
    sub->add_option("--density", cfg.density, "shortcut edges beyond the spine");
    sub->add_flag("--zero-delays", cfg.zero_delays, "generate zero-delay edges");
  };

  auto* validate = app.add_subcommand(
      "validate", "parse, check and print the canonical instance");
  with_instance(validate);
  with_out(validate);

  auto* quickest = app.add_subcommand(
      "quickest", "min-horizon routing of the full demand");
  with_instance(quickest);
  with_out(quickest);

  auto* equilibrium = app.add_subcommand(
      "equilibrium", "phase-by-phase dynamic equilibrium trace");
  with_instance(equilibrium);
  with_out(equilibrium);
  with_phase_cap(equilibrium);

  auto* stackelberg = app.add_subcommand(
      "stackelberg", "capacity-reduction pipeline with certified bounds");
  with_instance(stackelberg);
  with_out(stackelberg);
  with_phase_cap(stackelberg);

  auto* certify = app.add_subcommand(
      "certify", "invariant and cross-check report for one instance");
  with_instance(certify);
  with_out(certify);
  with_phase_cap(certify);
  certify->add_option("--dt", cfg.dt, "step width of the discrete replay");

  auto* batch = app.add_subcommand(
      "batch", "generate seeded instances and run the full pipeline on each");
  with_out(batch);
  with_phase_cap(batch);
  with_gen(batch);
  batch->add_option("--count", cfg.count, "number of instances");
  batch->add_option("--jobs", cfg.jobs, "worker threads");

  auto* generate = app.add_subcommand("generate", "emit one seeded instance");
  with_out(generate);
  with_gen(generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return flowtime::cli::run(cfg, std::cout, std::cerr);
}
