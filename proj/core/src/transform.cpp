#include "timewise/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "timewise/exact.hpp"

namespace timewise {

namespace {

std::set<std::size_t> descendants(const Network& net, std::size_t root) {
  std::vector<std::vector<std::size_t>> children(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t p : net.parents(i)) children[p].push_back(i);
  }
  std::set<std::size_t> seen;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    for (std::size_t c : children[n]) {
      if (seen.insert(c).second) stack.push_back(c);
    }
  }
  return seen;
}

std::size_t require_node(const Network& net, const std::string& id) {
  auto idx = net.index_of(id);
  if (!idx) throw ContractViolation("unknown variable '" + id + "'");
  return *idx;
}

std::vector<ValueNode> resolvable_values(const NetworkData& data, const std::set<std::string>& ids) {
  std::vector<ValueNode> out;
  for (const auto& v : data.values) {
    const bool ok = std::all_of(v.parents.begin(), v.parents.end(), [&](const auto& p) { return ids.count(p) != 0; });
    if (ok) out.push_back(v);
  }
  return out;
}

}  // namespace

Network impose_global_independence(const Network& net, const std::string& condition,
                                   const std::vector<std::string>& evidence_vars) {
  const std::size_t c = require_node(net, condition);
  std::set<std::size_t> evidence;
  for (const auto& id : evidence_vars) {
    if (id == condition) throw ContractViolation("condition '" + condition + "' listed among evidence variables");
    const std::size_t e = require_node(net, id);
    if (!evidence.insert(e).second) throw ContractViolation("evidence variable '" + id + "' listed twice");
    if (descendants(net, e).count(c) != 0) {
      throw ContractViolation("condition '" + condition + "' descends from evidence variable '" + id + "'");
    }
  }

  const Observations none(net.size());
  const auto prior = variable_elimination_distribution(net, none, c).probabilities;

  NetworkData out;
  std::set<std::string> kept_ids;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (i != c && evidence.count(i) == 0) continue;
    out.variables.push_back({net.id(i), {net.states(i).begin(), net.states(i).end()}});
    kept_ids.insert(net.id(i));

    ChanceSpec spec;
    spec.id = net.id(i);
    if (i == c) {
      spec.cpt = prior;
    } else {
      spec.parents = {condition};
      Observations obs(net.size());
      for (std::size_t s = 0; s < net.cardinality(c); ++s) {
        obs[c] = s;
        const auto row = variable_elimination_distribution(net, obs, i).probabilities;
        spec.cpt.insert(spec.cpt.end(), row.begin(), row.end());
      }
    }
    out.chance.push_back(std::move(spec));
  }
  out.decisions = net.data().decisions;
  for (const auto& d : out.decisions) kept_ids.insert(d.id);
  out.values = resolvable_values(net.data(), kept_ids);
  return Network::build(std::move(out));
}

Network prune_arcs(const Network& net, double threshold) {
  if (threshold <= 0.0) return net;

  const NetworkData& original = net.data();
  std::map<std::string, ChanceSpec> pruned;
  std::map<std::size_t, std::vector<double>> marginal_cache;
  std::vector<std::size_t> processed;

  // Marginal of `node` in the pruned prefix; the prefix is ancestrally closed.
  auto marginal = [&](std::size_t node) -> const std::vector<double>& {
    auto it = marginal_cache.find(node);
    if (it != marginal_cache.end()) return it->second;
    NetworkData prefix;
    std::vector<std::size_t> sorted = processed;
    std::sort(sorted.begin(), sorted.end());
    std::size_t target = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      const std::size_t i = sorted[k];
      if (i == node) target = k;
      prefix.variables.push_back(original.variables[i]);
      prefix.chance.push_back(pruned.at(net.id(i)));
    }
    const Network sub = Network::build(std::move(prefix));
    auto d = variable_elimination_distribution(sub, Observations(sub.size()), target);
    return marginal_cache.emplace(node, std::move(d.probabilities)).first->second;
  };

  for (std::size_t node : net.topo_order()) {
    const auto parents = net.parents(node);
    const auto weights = net.importance(node);
    const ChanceSpec& source =
        *std::find_if(original.chance.begin(), original.chance.end(), [&](const auto& s) { return s.id == net.id(node); });

    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
    for (std::size_t j = 0; j < parents.size(); ++j) (weights[j] < threshold ? dropped : kept).push_back(j);

    if (dropped.empty()) {
      pruned.emplace(net.id(node), source);
      processed.push_back(node);
      continue;
    }

    ChanceSpec spec;
    spec.id = net.id(node);
    for (std::size_t j : kept) spec.parents.push_back(net.id(parents[j]));
    if (source.arc_importance) {
      spec.arc_importance.emplace();
      for (std::size_t j : kept) spec.arc_importance->push_back(weights[j]);
    }

    std::vector<std::size_t> cards;
    for (std::size_t p : parents) cards.push_back(net.cardinality(p));
    std::vector<std::size_t> strides(parents.size(), 1);
    for (std::size_t j = parents.size(); j-- > 1;) strides[j - 1] = strides[j] * cards[j];

    const std::size_t k = net.cardinality(node);
    std::size_t kept_rows = 1;
    for (std::size_t j : kept) kept_rows *= cards[j];
    std::size_t dropped_rows = 1;
    for (std::size_t j : dropped) dropped_rows *= cards[j];

    spec.cpt.assign(kept_rows * k, 0.0);
    std::vector<std::size_t> state(parents.size(), 0);
    for (std::size_t kr = 0; kr < kept_rows; ++kr) {
      // Decode kr over the kept parents, last one fastest.
      std::size_t rem = kr;
      for (std::size_t m = kept.size(); m-- > 0;) {
        state[kept[m]] = rem % cards[kept[m]];
        rem /= cards[kept[m]];
      }
      for (std::size_t dr = 0; dr < dropped_rows; ++dr) {
        std::size_t drem = dr;
        double weight = 1.0;
        for (std::size_t m = dropped.size(); m-- > 0;) {
          const std::size_t j = dropped[m];
          state[j] = drem % cards[j];
          drem /= cards[j];
          weight *= marginal(parents[j])[state[j]];
        }
        std::size_t full_row = 0;
        for (std::size_t j = 0; j < parents.size(); ++j) full_row += state[j] * strides[j];
        const auto row = net.row_at(node, full_row);
        for (std::size_t s = 0; s < k; ++s) spec.cpt[kr * k + s] += weight * row[s];
      }
    }
    pruned.emplace(net.id(node), std::move(spec));
    processed.push_back(node);
  }

  NetworkData out;
  out.variables = original.variables;
  for (std::size_t i = 0; i < net.size(); ++i) out.chance.push_back(pruned.at(net.id(i)));
  out.decisions = original.decisions;
  out.values = original.values;
  return Network::build(std::move(out));
}

}  // namespace timewise
