#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "timewise/network.hpp"

namespace timewise {

/// P(target = target_state | evidence) together with P(evidence).
struct Posterior {
  double probability = 0.0;
  double evidence_mass = 0.0;
};

/// Full posterior over the target's states.
struct Distribution {
  std::vector<double> probabilities;
  double evidence_mass = 0.0;
};

/// Brute-force enumeration refuses networks whose instantiation space exceeds
/// 2^cap_bits (counted in binary-equivalent nodes, i.e. sum of log2 cardinalities).
inline constexpr double kDefaultOracleCapBits = 20.0;

/// Sums the full joint over every instantiation. The reference oracle.
Distribution joint_enumeration_distribution(const Network& net, const Observations& obs, std::size_t target,
                                            double cap_bits = kDefaultOracleCapBits);
Posterior joint_enumeration(const Network& net, const Evidence& ev, const Query& q,
                            double cap_bits = kDefaultOracleCapBits);

/// Greedy min-degree elimination order over the unobserved non-target nodes;
/// ties go to the smaller variable id.
std::vector<std::size_t> min_degree_order(const Network& net, const Observations& obs, std::size_t target);

Distribution variable_elimination_distribution(const Network& net, const Observations& obs, std::size_t target);

/// Same, with a caller-chosen order. `order` must be a permutation of the
/// unobserved non-target nodes.
Distribution variable_elimination_distribution(const Network& net, const Observations& obs, std::size_t target,
                                               std::span<const std::size_t> order);

Posterior variable_elimination(const Network& net, const Evidence& ev, const Query& q);
Posterior variable_elimination(const Network& net, const Evidence& ev, const Query& q,
                               std::span<const std::size_t> order);

/// Complete resources R_c, allocated resources R_a and their ratio R_f.
struct ResourceLedger {
  double complete_seconds = 0.0;
  double allocated_seconds = 0.0;

  double fraction() const { return allocated_seconds / complete_seconds; }
  ResourceLedger with_allocated(double seconds) const;
};

/// R_c as the median wall-clock time of `repeats` variable-elimination runs.
/// Requires repeats >= 3. Timing assumes the calling thread has a core to itself.
ResourceLedger measure_complete_resources(const Network& net, const Evidence& ev, const Query& q,
                                          std::size_t repeats = 5);

}  // namespace timewise
