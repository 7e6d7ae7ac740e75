#pragma once

#include <string>
#include <vector>

#include "timewise/network.hpp"

namespace timewise {

/// Rewrites the network as a star around `condition`.
///
/// The condition keeps its exact prior marginal; each evidence variable becomes
/// its sole child with P(e | condition) taken from exact pairwise
/// marginalisation on the original network. All other nodes and arcs are
/// dropped. Throws ContractViolation when the condition is listed among the
/// evidence variables, when a name does not resolve, or when the condition
/// descends from an evidence variable.
Network impose_global_independence(const Network& net, const std::string& condition,
                                   const std::vector<std::string>& evidence_vars);

/// Drops every arc whose importance is below `threshold`.
///
/// Nodes are processed in topological order; a dropped parent is summed out
/// of the child's CPT against that parent's marginal in the network pruned so
/// far. A threshold of 0 returns an identical network.
Network prune_arcs(const Network& net, double threshold);

}  // namespace timewise
