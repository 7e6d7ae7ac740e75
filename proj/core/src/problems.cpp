#include "timewise/problems.hpp"

#include <algorithm>
#include <numeric>

#include "timewise/random.hpp"

namespace timewise {

std::string ProblemClass::tag() const {
  return std::string(polytree ? "polytree" : "random") + "-n" + std::to_string(nodes) + "-p" +
         std::to_string(max_parents) + "-k" + std::to_string(cardinality) + "-e" + std::to_string(evidence);
}

Network random_network(const ProblemClass& cls, std::uint64_t seed) {
  if (cls.nodes == 0 || cls.cardinality < 2) throw ContractViolation("problem class needs nodes >= 1 and cardinality >= 2");
  Rng rng(seed);
  NetworkData data;
  std::vector<std::size_t> component(cls.nodes);
  std::iota(component.begin(), component.end(), std::size_t{0});
  auto find = [&component](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };

  for (std::size_t i = 0; i < cls.nodes; ++i) {
    Variable var{"X" + std::to_string(i), {}};
    for (std::size_t s = 0; s < cls.cardinality; ++s) var.states.push_back("s" + std::to_string(s));
    data.variables.push_back(var);

    std::vector<std::size_t> candidates(i);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    // Fisher-Yates with our own draw keeps the layout platform independent.
    for (std::size_t k = candidates.size(); k > 1; --k) std::swap(candidates[k - 1], candidates[rng.below(k)]);
    const std::size_t want = rng.below(std::min(i, cls.max_parents) + 1);

    ChanceSpec spec;
    spec.id = var.id;
    std::vector<std::size_t> chosen;
    for (std::size_t c : candidates) {
      if (chosen.size() == want) break;
      if (cls.polytree) {
        if (find(c) == find(i)) continue;
        component[find(c)] = find(i);
      }
      chosen.push_back(c);
    }
    std::sort(chosen.begin(), chosen.end());
    spec.arc_importance.emplace();
    for (std::size_t c : chosen) {
      spec.parents.push_back("X" + std::to_string(c));
      spec.arc_importance->push_back(rng.uniform());
    }

    std::size_t rows = 1;
    for (std::size_t c = 0; c < chosen.size(); ++c) rows *= cls.cardinality;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> row(cls.cardinality);
      double sum = 0.0;
      for (double& p : row) sum += p = rng.uniform(0.05, 1.0);
      for (double& p : row) spec.cpt.push_back(p / sum);
    }
    data.chance.push_back(std::move(spec));
  }
  return Network::build(std::move(data));
}

Problem random_problem(const ProblemClass& cls, std::uint64_t seed) {
  if (cls.evidence >= cls.nodes) throw ContractViolation("problem class needs more nodes than evidence variables");
  Network net = random_network(cls, seed);
  Rng rng(Rng::splitmix64(seed ^ 0x5bd1e995ULL));

  std::vector<std::size_t> sample(net.size(), 0);
  for (std::size_t node : net.topo_order()) {
    const auto row = net.row(node, sample);
    double u = rng.uniform();
    std::size_t s = 0;
    while (s + 1 < row.size() && u >= row[s]) u -= row[s++];
    sample[node] = s;
  }

  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);

  Problem problem{std::move(net), {}, {}};
  const std::size_t target = order.front();
  problem.query = {problem.net.id(target), problem.net.states(target)[0]};
  for (std::size_t k = 1; k <= cls.evidence; ++k) {
    const std::size_t node = order[k];
    problem.evidence.assignments.emplace(problem.net.id(node), problem.net.states(node)[sample[node]]);
  }
  return problem;
}

}  // namespace timewise
