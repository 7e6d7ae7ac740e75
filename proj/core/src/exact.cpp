#include "timewise/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace timewise {

namespace {

// Table over a sorted set of nodes, row-major with the last node varying fastest.
struct Factor {
  std::vector<std::size_t> vars;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(vars.size(), 1);
    for (std::size_t j = vars.size(); j-- > 1;) s[j - 1] = s[j] * cards[j];
    return s;
  }
};

// Advances a mixed-radix counter; returns false after the last combination.
bool next_assignment(std::vector<std::size_t>& digits, const std::vector<std::size_t>& cards) {
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (++digits[j] < cards[j]) return true;
    digits[j] = 0;
  }
  return false;
}

std::size_t table_size(const std::vector<std::size_t>& cards) {
  std::size_t n = 1;
  for (auto c : cards) n *= c;
  return n;
}

Factor cpt_factor(const Network& net, std::size_t node) {
  Factor f;
  f.vars.assign(net.parents(node).begin(), net.parents(node).end());
  f.vars.push_back(node);
  std::sort(f.vars.begin(), f.vars.end());
  for (auto v : f.vars) f.cards.push_back(net.cardinality(v));
  f.values.resize(table_size(f.cards));

  std::vector<std::size_t> assignment(net.size(), 0);
  std::vector<std::size_t> digits(f.vars.size(), 0);
  std::size_t idx = 0;
  do {
    for (std::size_t j = 0; j < f.vars.size(); ++j) assignment[f.vars[j]] = digits[j];
    f.values[idx++] = net.row(node, assignment)[assignment[node]];
  } while (next_assignment(digits, f.cards));
  return f;
}

Factor restrict_to(const Factor& f, std::size_t var, std::size_t state) {
  const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
  if (pos == f.vars.size()) return f;
  Factor out;
  for (std::size_t j = 0; j < f.vars.size(); ++j) {
    if (j == pos) continue;
    out.vars.push_back(f.vars[j]);
    out.cards.push_back(f.cards[j]);
  }
  out.values.resize(table_size(out.cards));
  const auto in_strides = f.strides();
  std::vector<std::size_t> digits(out.vars.size(), 0);
  std::size_t idx = 0;
  do {
    std::size_t src = state * in_strides[pos];
    for (std::size_t j = 0, k = 0; j < f.vars.size(); ++j) {
      if (j == pos) continue;
      src += digits[k++] * in_strides[j];
    }
    out.values[idx++] = f.values[src];
  } while (next_assignment(digits, out.cards));
  return out;
}

Factor multiply(const Factor& a, const Factor& b) {
  Factor out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(out.vars));
  std::vector<std::size_t> a_map(out.vars.size(), 0);
  std::vector<std::size_t> b_map(out.vars.size(), 0);
  const auto sa = a.strides();
  const auto sb = b.strides();
  for (std::size_t j = 0; j < out.vars.size(); ++j) {
    const auto v = out.vars[j];
    if (auto it = std::find(a.vars.begin(), a.vars.end(), v); it != a.vars.end()) {
      const auto k = static_cast<std::size_t>(it - a.vars.begin());
      a_map[j] = sa[k];
      out.cards.push_back(a.cards[k]);
    } else {
      const auto k = static_cast<std::size_t>(std::find(b.vars.begin(), b.vars.end(), v) - b.vars.begin());
      out.cards.push_back(b.cards[k]);
    }
    if (auto it = std::find(b.vars.begin(), b.vars.end(), v); it != b.vars.end()) {
      b_map[j] = sb[static_cast<std::size_t>(it - b.vars.begin())];
    }
  }
  out.values.resize(table_size(out.cards));
  std::vector<std::size_t> digits(out.vars.size(), 0);
  std::size_t idx = 0;
  do {
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t j = 0; j < digits.size(); ++j) {
      ia += digits[j] * a_map[j];
      ib += digits[j] * b_map[j];
    }
    out.values[idx++] = a.values[ia] * b.values[ib];
  } while (next_assignment(digits, out.cards));
  return out;
}

Factor sum_out(const Factor& f, std::size_t var) {
  const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
  Factor out;
  for (std::size_t j = 0; j < f.vars.size(); ++j) {
    if (j == pos) continue;
    out.vars.push_back(f.vars[j]);
    out.cards.push_back(f.cards[j]);
  }
  out.values.assign(table_size(out.cards), 0.0);
  const auto out_strides = out.strides();
  std::vector<std::size_t> digits(f.vars.size(), 0);
  std::size_t idx = 0;
  do {
    std::size_t dst = 0;
    for (std::size_t j = 0, k = 0; j < f.vars.size(); ++j) {
      if (j == pos) continue;
      dst += digits[j] * out_strides[k++];
    }
    out.values[dst] += f.values[idx++];
  } while (next_assignment(digits, f.cards));
  return out;
}

bool mentions(const Factor& f, std::size_t var) {
  return std::binary_search(f.vars.begin(), f.vars.end(), var);
}

std::vector<Factor> evidence_factors(const Network& net, const Observations& obs) {
  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    Factor f = cpt_factor(net, i);
    for (std::size_t j = 0; j < obs.size(); ++j) {
      if (obs[j] && mentions(f, j)) f = restrict_to(f, j, *obs[j]);
    }
    factors.push_back(std::move(f));
  }
  return factors;
}

void eliminate(std::vector<Factor>& factors, std::size_t var) {
  Factor joint;
  joint.values = {1.0};
  std::vector<Factor> rest;
  rest.reserve(factors.size());
  for (auto& f : factors) {
    if (mentions(f, var)) {
      joint = multiply(joint, f);
    } else {
      rest.push_back(std::move(f));
    }
  }
  rest.push_back(sum_out(joint, var));
  factors = std::move(rest);
}

std::set<std::size_t> neighbours(const std::vector<Factor>& factors, std::size_t var) {
  std::set<std::size_t> out;
  for (const auto& f : factors) {
    if (mentions(f, var)) out.insert(f.vars.begin(), f.vars.end());
  }
  out.erase(var);
  return out;
}

std::vector<std::size_t> eliminable(const Network& net, const Observations& obs, std::size_t target) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (i != target && !obs[i]) out.push_back(i);
  }
  return out;
}

void check_inputs(const Network& net, const Observations& obs, std::size_t target) {
  if (obs.size() != net.size()) throw ContractViolation("observation vector does not match the network");
  if (target >= net.size()) throw ContractViolation("target node out of range");
  if (obs[target]) throw ContractViolation("query target '" + net.id(target) + "' is observed");
}

Distribution finish(const Network& net, std::vector<Factor> factors, std::size_t target) {
  Factor joint;
  joint.values = {1.0};
  for (const auto& f : factors) joint = multiply(joint, f);
  // Only the target remains in scope.
  Distribution d;
  d.probabilities.assign(net.cardinality(target), 0.0);
  for (std::size_t s = 0; s < d.probabilities.size(); ++s) d.probabilities[s] = joint.values[s];
  for (double v : d.probabilities) d.evidence_mass += v;
  if (!(d.evidence_mass > 0.0)) throw InconsistentEvidence("evidence has zero probability");
  for (double& v : d.probabilities) v /= d.evidence_mass;
  return d;
}

Posterior to_posterior(const Distribution& d, std::size_t state) {
  return {d.probabilities[state], d.evidence_mass};
}

}  // namespace

Distribution joint_enumeration_distribution(const Network& net, const Observations& obs, std::size_t target,
                                            double cap_bits) {
  check_inputs(net, obs, target);
  double bits = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) bits += std::log2(static_cast<double>(net.cardinality(i)));
  if (bits > cap_bits + 1e-9) {
    throw OracleCapExceeded("joint enumeration over " + std::to_string(bits) + " binary-equivalent nodes exceeds cap");
  }

  std::vector<std::size_t> cards(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) cards[i] = net.cardinality(i);
  std::vector<std::size_t> x(net.size(), 0);
  std::vector<double> mass(net.cardinality(target), 0.0);
  do {
    bool consistent = true;
    for (std::size_t i = 0; i < net.size() && consistent; ++i) {
      if (obs[i] && *obs[i] != x[i]) consistent = false;
    }
    if (!consistent) continue;
    double p = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) p *= net.row(i, x)[x[i]];
    mass[x[target]] += p;
  } while (next_assignment(x, cards));

  Distribution d;
  for (double m : mass) d.evidence_mass += m;
  if (!(d.evidence_mass > 0.0)) throw InconsistentEvidence("evidence has zero probability");
  for (double m : mass) d.probabilities.push_back(m / d.evidence_mass);
  return d;
}

Posterior joint_enumeration(const Network& net, const Evidence& ev, const Query& q, double cap_bits) {
  const auto obs = resolve(net, ev);
  const auto rq = resolve(net, q, obs);
  return to_posterior(joint_enumeration_distribution(net, obs, rq.node, cap_bits), rq.state);
}

std::vector<std::size_t> min_degree_order(const Network& net, const Observations& obs, std::size_t target) {
  check_inputs(net, obs, target);
  auto factors = evidence_factors(net, obs);
  auto remaining = eliminable(net, obs, target);
  std::vector<std::size_t> order;
  while (!remaining.empty()) {
    auto best = remaining.begin();
    std::size_t best_degree = neighbours(factors, *best).size();
    for (auto it = std::next(remaining.begin()); it != remaining.end(); ++it) {
      const std::size_t degree = neighbours(factors, *it).size();
      if (degree < best_degree || (degree == best_degree && net.id(*it) < net.id(*best))) {
        best = it;
        best_degree = degree;
      }
    }
    order.push_back(*best);
    // Only the scopes matter for the next choice; merge the factors symbolically.
    Factor merged;
    std::vector<Factor> rest;
    std::set<std::size_t> scope;
    for (auto& f : factors) {
      if (mentions(f, *best)) {
        scope.insert(f.vars.begin(), f.vars.end());
      } else {
        rest.push_back(std::move(f));
      }
    }
    scope.erase(*best);
    merged.vars.assign(scope.begin(), scope.end());
    rest.push_back(std::move(merged));
    factors = std::move(rest);
    remaining.erase(best);
  }
  return order;
}

Distribution variable_elimination_distribution(const Network& net, const Observations& obs, std::size_t target) {
  const auto order = min_degree_order(net, obs, target);
  return variable_elimination_distribution(net, obs, target, order);
}

Distribution variable_elimination_distribution(const Network& net, const Observations& obs, std::size_t target,
                                               std::span<const std::size_t> order) {
  check_inputs(net, obs, target);
  auto expected = eliminable(net, obs, target);
  std::vector<std::size_t> given(order.begin(), order.end());
  std::sort(given.begin(), given.end());
  if (given != expected) {
    throw ContractViolation("elimination order must be a permutation of the unobserved non-target nodes");
  }
  auto factors = evidence_factors(net, obs);
  for (std::size_t var : order) eliminate(factors, var);
  return finish(net, std::move(factors), target);
}

Posterior variable_elimination(const Network& net, const Evidence& ev, const Query& q) {
  const auto obs = resolve(net, ev);
  const auto rq = resolve(net, q, obs);
  return to_posterior(variable_elimination_distribution(net, obs, rq.node), rq.state);
}

Posterior variable_elimination(const Network& net, const Evidence& ev, const Query& q,
                               std::span<const std::size_t> order) {
  const auto obs = resolve(net, ev);
  const auto rq = resolve(net, q, obs);
  return to_posterior(variable_elimination_distribution(net, obs, rq.node, order), rq.state);
}

ResourceLedger ResourceLedger::with_allocated(double seconds) const {
  if (seconds < 0.0) throw ContractViolation("allocated resources must be non-negative");
  return {complete_seconds, seconds};
}

ResourceLedger measure_complete_resources(const Network& net, const Evidence& ev, const Query& q,
                                          std::size_t repeats) {
  if (repeats < 3) throw ContractViolation("measure_complete_resources needs at least 3 repeats");
  const auto obs = resolve(net, ev);
  const auto rq = resolve(net, q, obs);
  std::vector<double> seconds;
  seconds.reserve(repeats);
  for (std::size_t i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    (void)variable_elimination_distribution(net, obs, rq.node);
    const auto stop = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(seconds.begin(), seconds.end());
  const double median = seconds[seconds.size() / 2];
  // A clock tick below resolution still cost something.
  return {std::max(median, 1e-9), 0.0};
}

}  // namespace timewise
