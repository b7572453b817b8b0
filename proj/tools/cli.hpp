#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace flowtime::cli {

struct RunConfig {
  std::string command;        // validate | quickest | equilibrium | stackelberg
                              // | certify | batch | generate
  std::string instance_path;  // input instance (JSON); unused by batch/generate
  std::string out_path;       // write the report here instead of the out stream
  std::uint64_t seed = 1;
  int count = 20;             // batch size
  int nodes = 6;              // generated instance size (incl. source/sink)
  int density = 4;            // generated shortcut edges beyond the spine
  bool zero_delays = false;
  double dt = 1e-3;           // step of the discrete replay run by certify
  int phase_cap = 0;          // 0 = default cap
  int jobs = 1;               // batch worker threads
};

// Runs one command. Reports go to `out` (or cfg.out_path when set), progress
// logging to `err` when FLOWTIME_LOG is set. Returns the process exit code:
// 0 success, 1 failed checks, >=2 the error kind.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace flowtime::cli
