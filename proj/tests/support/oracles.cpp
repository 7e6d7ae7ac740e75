#include "oracles.hpp"

#include <algorithm>
#include <random>

namespace timewise::testing {

std::pair<double, double> enumerate_posterior(const Network& net, const std::map<std::size_t, std::size_t>& observed,
                                              std::size_t target, std::size_t state) {
  const std::size_t n = net.size();
  std::vector<std::size_t> x(n, 0);
  double hit = 0.0;
  double mass = 0.0;
  while (true) {
    bool consistent = true;
    for (const auto& [node, s] : observed) consistent = consistent && x[node] == s;
    if (consistent) {
      double p = 1.0;
      for (std::size_t v = 0; v < n; ++v) {
        const auto parents = net.parents(v);
        std::size_t row = 0;
        for (std::size_t parent : parents) row = row * net.cardinality(parent) + x[parent];
        p *= net.cpt(v)[row * net.cardinality(v) + x[v]];
      }
      mass += p;
      if (x[target] == state) hit += p;
    }
    std::size_t k = 0;
    while (k < n && ++x[k] == net.cardinality(k)) x[k++] = 0;
    if (k == n) break;
  }
  return {hit / mass, mass};
}

bool has_undirected_cycle(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> degree(vertices, 0);
  std::vector<bool> alive_edge(edges.size(), true);
  std::vector<bool> alive(vertices, true);
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < vertices; ++v) {
      if (!alive[v] || degree[v] > 1) continue;
      alive[v] = false;
      changed = true;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!alive_edge[e] || (edges[e].first != v && edges[e].second != v)) continue;
        alive_edge[e] = false;
        --degree[edges[e].first];
        --degree[edges[e].second];
      }
    }
  }
  return std::any_of(alive.begin(), alive.end(), [](bool a) { return a; });
}

double noisy_or_product(const std::vector<double>& activations, double leak, const std::vector<bool>& on) {
  double off = 1.0 - leak;
  for (std::size_t i = 0; i < activations.size(); ++i) {
    if (on[i]) off *= 1.0 - activations[i];
  }
  return 1.0 - off;
}

double monte_carlo_object_value(const ValueContext& ctx, double width, std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> belief(ctx.belief_low, ctx.belief_high);
  std::uniform_real_distribution<double> error(-width / 2.0, width / 2.0);
  const UtilityTable& u = ctx.utilities;
  double total = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double p = belief(gen);
    const double estimate = std::clamp(p + (width > 0.0 ? error(gen) : 0.0), 0.0, 1.0);
    const double eu_treat = estimate * u.treat_cond + (1.0 - estimate) * u.treat_nocond;
    const double eu_wait = estimate * u.notreat_cond + (1.0 - estimate) * u.notreat_nocond;
    const bool treat = eu_treat > eu_wait;
    total += treat ? p * u.treat_cond + (1.0 - p) * u.treat_nocond : p * u.notreat_cond + (1.0 - p) * u.notreat_nocond;
  }
  return total / static_cast<double>(draws);
}

double grid_switch_point(const UtilityTable& u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(n - 1);
    if (p * u.treat_cond + (1.0 - p) * u.treat_nocond > p * u.notreat_cond + (1.0 - p) * u.notreat_nocond) return p;
  }
  return 1.0;
}

GridPeak dense_grid_peak(const std::function<double(double)>& f, double horizon, std::size_t n) {
  GridPeak best{0.0, f(0.0)};
  for (std::size_t i = 1; i < n; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = f(t);
    if (v > best.value) best = {t, v};
  }
  return best;
}

}  // namespace timewise::testing
