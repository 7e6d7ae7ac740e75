#include "timewise/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace timewise {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateId: return "duplicate-id";
    case ViolationKind::kBadStates: return "bad-states";
    case ViolationKind::kMissingChance: return "missing-chance";
    case ViolationKind::kUnknownVariable: return "unknown-variable";
    case ViolationKind::kDanglingParent: return "dangling-parent";
    case ViolationKind::kDuplicateParent: return "duplicate-parent";
    case ViolationKind::kCptSize: return "cpt-size";
    case ViolationKind::kProbabilityRange: return "probability-range";
    case ViolationKind::kRowSum: return "row-sum";
    case ViolationKind::kImportanceLength: return "importance-length";
    case ViolationKind::kImportanceRange: return "importance-range";
    case ViolationKind::kNoisyOr: return "noisy-or";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kDanglingValueParent: return "dangling-value-parent";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << timewise::to_string(v.kind) << " [" << v.node << "]: " << v.message << '\n';
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("network validation failed:\n" + report.to_string()), report_(std::move(report)) {}

namespace {

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Reports the nodes of one directed cycle among `ids`, or nothing when the graph is a DAG.
std::vector<std::string> find_cycle(const std::vector<std::string>& ids,
                                    const std::vector<std::vector<std::size_t>>& parents) {
  const std::size_t n = ids.size();
  enum class Mark { kWhite, kGrey, kBlack };
  std::vector<Mark> mark(n, Mark::kWhite);
  std::vector<std::size_t> path;

  // Iterative DFS along parent edges; a grey hit closes a cycle on `path`.
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::kWhite) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::kGrey;
    path.assign(1, root);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < parents[node].size()) {
        const std::size_t p = parents[node][next++];
        if (mark[p] == Mark::kGrey) {
          auto it = std::find(path.begin(), path.end(), p);
          std::vector<std::string> cycle;
          for (; it != path.end(); ++it) cycle.push_back(ids[*it]);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (mark[p] == Mark::kWhite) {
          mark[p] = Mark::kGrey;
          path.push_back(p);
          stack.emplace_back(p, 0);
        }
      } else {
        mark[node] = Mark::kBlack;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

std::vector<double> noisy_or_cpt(const NoisyOrSpec& spec, std::size_t parent_count) {
  if (spec.activations.size() != parent_count) {
    throw ContractViolation("noisy-OR: " + std::to_string(spec.activations.size()) +
                            " activations for " + std::to_string(parent_count) + " parents");
  }
  if (!in_unit_interval(spec.leak)) throw ContractViolation("noisy-OR: leak outside [0,1]");
  for (double p : spec.activations) {
    if (!in_unit_interval(p)) throw ContractViolation("noisy-OR: activation outside [0,1]");
  }

  const std::size_t rows = std::size_t{1} << parent_count;
  std::vector<double> cpt;
  cpt.reserve(rows * 2);
  for (std::size_t r = 0; r < rows; ++r) {
    // Parent i's state is bit (parent_count - 1 - i) of r; state 0 means on.
    double off = 1.0 - spec.leak;
    for (std::size_t i = 0; i < parent_count; ++i) {
      const bool on = ((r >> (parent_count - 1 - i)) & 1U) == 0;
      if (on) off *= 1.0 - spec.activations[i];
    }
    const double p_on = 1.0 - off;
    cpt.push_back(p_on);
    cpt.push_back(1.0 - p_on);
  }
  return cpt;
}

ValidationReport validate(const NetworkData& data) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, const std::string& node, std::string message) {
    report.violations.push_back({kind, node, std::move(message)});
  };

  std::map<std::string, std::size_t> var_index;
  for (std::size_t i = 0; i < data.variables.size(); ++i) {
    const auto& var = data.variables[i];
    if (!var_index.emplace(var.id, i).second) {
      add(ViolationKind::kDuplicateId, var.id, "variable declared more than once");
    }
    if (var.states.size() < 2) {
      add(ViolationKind::kBadStates, var.id, "fewer than two states");
    }
    std::set<std::string> seen(var.states.begin(), var.states.end());
    if (seen.size() != var.states.size()) {
      add(ViolationKind::kBadStates, var.id, "duplicate state label");
    }
  }

  std::set<std::string> other_ids;
  for (const auto& d : data.decisions) {
    if (var_index.count(d.id) != 0 || !other_ids.insert(d.id).second) {
      add(ViolationKind::kDuplicateId, d.id, "decision id already in use");
    }
    if (d.options.empty()) add(ViolationKind::kBadStates, d.id, "decision without options");
  }
  for (const auto& v : data.values) {
    if (var_index.count(v.id) != 0 || !other_ids.insert(v.id).second) {
      add(ViolationKind::kDuplicateId, v.id, "value node id already in use");
    }
  }

  // Parent graph over variable indices, for the cycle check below.
  std::vector<std::vector<std::size_t>> parent_graph(data.variables.size());
  std::vector<bool> has_chance(data.variables.size(), false);

  for (const auto& node : data.chance) {
    auto self = var_index.find(node.id);
    if (self == var_index.end()) {
      add(ViolationKind::kUnknownVariable, node.id, "chance entry without a declared variable");
      continue;
    }
    if (has_chance[self->second]) {
      add(ViolationKind::kDuplicateId, node.id, "more than one chance entry");
      continue;
    }
    has_chance[self->second] = true;
    const auto& var = data.variables[self->second];

    bool parents_ok = true;
    std::size_t rows = 1;
    std::set<std::string> seen_parents;
    for (const auto& p : node.parents) {
      auto it = var_index.find(p);
      if (it == var_index.end()) {
        add(ViolationKind::kDanglingParent, node.id, "parent '" + p + "' is not a variable");
        parents_ok = false;
        continue;
      }
      if (!seen_parents.insert(p).second) {
        add(ViolationKind::kDuplicateParent, node.id, "parent '" + p + "' listed twice");
        parents_ok = false;
        continue;
      }
      parent_graph[self->second].push_back(it->second);
      rows *= data.variables[it->second].states.size();
    }

    if (node.arc_importance) {
      if (node.arc_importance->size() != node.parents.size()) {
        add(ViolationKind::kImportanceLength, node.id,
            std::to_string(node.arc_importance->size()) + " importance weights for " +
                std::to_string(node.parents.size()) + " parents");
      }
      for (double w : *node.arc_importance) {
        if (!in_unit_interval(w)) {
          add(ViolationKind::kImportanceRange, node.id, "arc importance " + fmt_double(w) + " outside [0,1]");
        }
      }
    }

    std::vector<double> cpt;
    if (node.noisy_or) {
      bool binary = var.states.size() == 2;
      for (const auto& p : node.parents) {
        auto it = var_index.find(p);
        if (it != var_index.end() && data.variables[it->second].states.size() != 2) binary = false;
      }
      if (!binary) {
        add(ViolationKind::kNoisyOr, node.id, "noisy-OR requires a binary child and binary parents");
        continue;
      }
      if (!node.cpt.empty()) {
        add(ViolationKind::kNoisyOr, node.id, "noisy_or and cpt are mutually exclusive");
      }
      try {
        cpt = noisy_or_cpt(*node.noisy_or, node.parents.size());
      } catch (const ContractViolation& e) {
        add(ViolationKind::kNoisyOr, node.id, e.what());
        continue;
      }
    } else {
      cpt = node.cpt;
    }
    if (!parents_ok) continue;

    const std::size_t k = var.states.size();
    if (k == 0 || cpt.size() != rows * k) {
      add(ViolationKind::kCptSize, node.id,
          "cpt has " + std::to_string(cpt.size()) + " entries, expected " + std::to_string(rows * k));
      continue;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      bool range_ok = true;
      for (std::size_t s = 0; s < k; ++s) {
        const double p = cpt[r * k + s];
        if (!in_unit_interval(p)) range_ok = false;
        sum += p;
      }
      if (!range_ok) {
        add(ViolationKind::kProbabilityRange, node.id, "row " + std::to_string(r) + " has an entry outside [0,1]");
      }
      if (!(std::abs(sum - 1.0) <= kRowSumTolerance)) {
        add(ViolationKind::kRowSum, node.id, "row " + std::to_string(r) + " sums to " + fmt_double(sum) + " != 1");
      }
    }
  }

  for (std::size_t i = 0; i < data.variables.size(); ++i) {
    if (!has_chance[i] && var_index[data.variables[i].id] == i) {
      add(ViolationKind::kMissingChance, data.variables[i].id, "variable has no chance entry");
    }
  }

  std::vector<std::string> ids;
  ids.reserve(data.variables.size());
  for (const auto& v : data.variables) ids.push_back(v.id);
  if (auto cycle = find_cycle(ids, parent_graph); !cycle.empty()) {
    std::string joined;
    for (const auto& id : cycle) joined += (joined.empty() ? "" : " -> ") + id;
    joined += " -> " + cycle.front();
    add(ViolationKind::kCycle, cycle.front(), "directed cycle " + joined);
  }

  for (const auto& v : data.values) {
    for (const auto& p : v.parents) {
      if (var_index.count(p) == 0 && other_ids.count(p) == 0) {
        add(ViolationKind::kDanglingValueParent, v.id, "parent '" + p + "' does not exist");
      }
    }
  }
  return report;
}

Network Network::build(NetworkData data) {
  if (auto report = validate(data); !report.ok()) throw ValidationError(std::move(report));

  Network net;
  const std::size_t n = data.variables.size();
  for (std::size_t i = 0; i < n; ++i) net.index_.emplace(data.variables[i].id, i);

  net.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) net.nodes_[i].variable = data.variables[i];
  for (const auto& spec : data.chance) {
    Node& node = net.nodes_[net.index_.at(spec.id)];
    for (const auto& p : spec.parents) node.parents.push_back(net.index_.at(p));
    node.importance = spec.arc_importance.value_or(std::vector<double>(spec.parents.size(), 1.0));
    node.cpt = spec.noisy_or ? noisy_or_cpt(*spec.noisy_or, spec.parents.size()) : spec.cpt;

    // Row strides: the last parent varies fastest.
    node.strides.assign(node.parents.size(), 1);
    for (std::size_t j = node.parents.size(); j-- > 1;) {
      node.strides[j - 1] = node.strides[j] * data.variables[node.parents[j]].states.size();
    }
  }

  // Kahn's algorithm, smallest index first, so the order is deterministic.
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    indegree[i] = net.nodes_[i].parents.size();
    for (std::size_t p : net.nodes_[i].parents) children[p].push_back(i);
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const std::size_t next = *ready.begin();
    ready.erase(ready.begin());
    net.topo_order_.push_back(next);
    for (std::size_t c : children[next]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }

  net.data_ = std::move(data);
  return net;
}

std::optional<std::size_t> Network::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::state_index(std::size_t node, std::string_view state) const {
  const auto& states = nodes_[node].variable.states;
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

std::size_t Network::row_count(std::size_t node) const {
  return nodes_[node].cpt.size() / cardinality(node);
}

std::span<const double> Network::row(std::size_t node, std::span<const std::size_t> assignment) const {
  const Node& n = nodes_[node];
  std::size_t r = 0;
  for (std::size_t j = 0; j < n.parents.size(); ++j) r += assignment[n.parents[j]] * n.strides[j];
  return row_at(node, r);
}

std::span<const double> Network::row_at(std::size_t node, std::size_t row_index) const {
  const Node& n = nodes_[node];
  const std::size_t k = n.variable.states.size();
  return std::span<const double>(n.cpt).subspan(row_index * k, k);
}

bool is_multiply_connected(const Network& net) {
  std::vector<std::size_t> component(net.size());
  std::iota(component.begin(), component.end(), std::size_t{0});
  auto find = [&component](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };
  for (std::size_t child = 0; child < net.size(); ++child) {
    for (std::size_t parent : net.parents(child)) {
      const std::size_t a = find(child);
      const std::size_t b = find(parent);
      if (a == b) return true;
      component[a] = b;
    }
  }
  return false;
}

Observations resolve(const Network& net, const Evidence& ev) {
  Observations obs(net.size());
  for (const auto& [var, state] : ev.assignments) {
    auto node = net.index_of(var);
    if (!node) throw ContractViolation("evidence names unknown variable '" + var + "'");
    auto s = net.state_index(*node, state);
    if (!s) throw ContractViolation("evidence state '" + state + "' is not a state of '" + var + "'");
    obs[*node] = *s;
  }
  return obs;
}

ResolvedQuery resolve(const Network& net, const Query& q, const Observations& obs) {
  auto node = net.index_of(q.target);
  if (!node) throw ContractViolation("query names unknown variable '" + q.target + "'");
  auto s = net.state_index(*node, q.target_state);
  if (!s) throw ContractViolation("query state '" + q.target_state + "' is not a state of '" + q.target + "'");
  if (obs.size() == net.size() && obs[*node]) {
    throw ContractViolation("query target '" + q.target + "' is already observed");
  }
  return {*node, *s};
}

}  // namespace timewise
