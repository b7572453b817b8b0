#pragma once

#include <string>

#include "flowtime/network.hpp"

namespace flowtime {

/**
 * Instance wire format (JSON object):
 *   {
 *     "nodes": ["s", "v", "t"],
 *     "edges": [{"id": "e1", "tail": "s", "head": "v",
 *                "capacity": 2, "delay": 0}, ...],
 *     "source": "s", "sink": "t",
 *     "inflow_rate": 3, "demand": "11/2"
 *   }
 * Numbers are JSON integers or strings "p/q". parse_network performs syntax
 * and shape checks only; run validate() for structural/domain checks.
 */
Network parse_network(const std::string& json_text);

// Canonical serialization: validated field order, edges sorted by id, every
// number an explicit "p/q" string in lowest terms. parse_network is an exact
// inverse on validated networks.
std::string serialize_network(const Network& net);

Network load_network_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace flowtime
