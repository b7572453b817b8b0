#pragma once

#include <string>
#include <vector>

#include "flowtime/equilibrium.hpp"
#include "flowtime/metrics.hpp"
#include "flowtime/network.hpp"
#include "flowtime/quickest.hpp"
#include "flowtime/stackelberg.hpp"

namespace flowtime {

/**
 * Deterministic JSON/CSV renderings of the engine outputs. Exact values are
 * strings in lowest terms; fields ending in _float are double renderings for
 * quick reading and plotting, never inputs to anything exact.
 */

std::string plan_json(const Network& net, const QuickestFlowPlan& plan);
std::string trace_json(const Network& net, const EquilibriumTrace& trace);
std::string pipeline_json(const Network& net, const StackelbergResult& result);
std::string checks_json(const std::vector<CheckRow>& rows);

// One line per phase: tau window and arrival rate, exact and float columns.
std::string arrival_csv(const EquilibriumTrace& trace);

}  // namespace flowtime
