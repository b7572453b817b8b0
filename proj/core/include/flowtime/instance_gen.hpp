#pragma once

#include <cstdint>

#include "flowtime/network.hpp"

namespace flowtime {

struct GenConfig {
  std::uint64_t seed = 1;
  int nodes = 6;        // total, including source and sink (>= 2)
  int extra_edges = 4;  // random shortcut edges on top of the spine
  bool zero_delays = false;
};

/**
 * Random acyclic instance: a spine path source -> v1 -> ... -> sink plus
 * forward shortcuts, capacities and delays drawn from small half-integer
 * grids. The inflow rate is a fraction of the max flow value (never above
 * it) and the demand a half-integer multiple of the inflow rate, so every
 * instance admits a finite quickest flow and a terminating equilibrium.
 * Byte-identical across platforms for a fixed config.
 */
Network generate_instance(const GenConfig& cfg);

}  // namespace flowtime
