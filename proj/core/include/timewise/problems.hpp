#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "timewise/network.hpp"

namespace timewise {

/// Recipe for random inference problems used in profiling and testing.
struct ProblemClass {
  std::size_t nodes = 6;
  std::size_t max_parents = 2;
  std::size_t cardinality = 2;
  std::size_t evidence = 1;
  bool polytree = false;

  /// Short tag such as "random-n6-p2-k2-e1".
  std::string tag() const;
};

struct Problem {
  Network net;
  Evidence evidence;
  Query query;
};

/// Nodes X0..X{n-1} in topological order, random parents among earlier nodes,
/// CPT entries drawn on [0.05, 1) and normalised, importance weights on [0, 1).
Network random_network(const ProblemClass& cls, std::uint64_t seed);

/// Random network plus evidence copied from one forward sample, so the
/// evidence always has positive probability. The query asks for state 0 of a
/// random unobserved node.
Problem random_problem(const ProblemClass& cls, std::uint64_t seed);

}  // namespace timewise
