#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "timewise/errors.hpp"

namespace timewise {

/// Absolute tolerance on CPT row sums.
inline constexpr double kRowSumTolerance = 1e-9;

struct Variable {
  std::string id;
  std::vector<std::string> states;

  bool operator==(const Variable&) const = default;
};

/// Noisy-OR parameterisation of a binary child with binary parents.
/// State 0 of every participating variable is the "on" state.
struct NoisyOrSpec {
  std::vector<double> activations;
  double leak = 0.0;

  bool operator==(const NoisyOrSpec&) const = default;
};

/// One chance node as written in a network file.
///
/// `cpt` is flat and row-major: one row per parent-state combination, the last
/// declared parent varying fastest, each row holding one probability per own
/// state. When `noisy_or` is set it replaces `cpt` entirely.
struct ChanceSpec {
  std::string id;
  std::vector<std::string> parents;
  std::vector<double> cpt;
  std::optional<std::vector<double>> arc_importance;
  std::optional<NoisyOrSpec> noisy_or;

  bool operator==(const ChanceSpec&) const = default;
};

struct DecisionNode {
  std::string id;
  std::vector<std::string> options;

  bool operator==(const DecisionNode&) const = default;
};

struct ValueNode {
  std::string id;
  std::vector<std::string> parents;

  bool operator==(const ValueNode&) const = default;
};

/// Unvalidated network description, a direct mirror of the file format.
struct NetworkData {
  std::vector<Variable> variables;
  std::vector<ChanceSpec> chance;
  std::vector<DecisionNode> decisions;
  std::vector<ValueNode> values;

  bool operator==(const NetworkData&) const = default;
};

enum class ViolationKind {
  kDuplicateId,
  kBadStates,
  kMissingChance,
  kUnknownVariable,
  kDanglingParent,
  kDuplicateParent,
  kCptSize,
  kProbabilityRange,
  kRowSum,
  kImportanceLength,
  kImportanceRange,
  kNoisyOr,
  kCycle,
  kDanglingValueParent,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

/// Collects every violated invariant; never throws.
ValidationReport validate(const NetworkData& data);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// CPT rows for a noisy-OR child, laid out like ChanceSpec::cpt.
/// Throws ContractViolation on a length mismatch or an out-of-range probability.
std::vector<double> noisy_or_cpt(const NoisyOrSpec& spec, std::size_t parent_count);

/// A validated, immutable belief network over the chance nodes.
///
/// Node indices follow the order of `NetworkData::variables`. Decision and
/// value nodes are carried in `data()` as descriptive metadata only.
class Network {
 public:
  /// Validates `data` and throws ValidationError carrying the full report on failure.
  static Network build(NetworkData data);

  const NetworkData& data() const { return data_; }

  std::size_t size() const { return nodes_.size(); }
  const std::string& id(std::size_t node) const { return nodes_[node].variable.id; }
  std::span<const std::string> states(std::size_t node) const { return nodes_[node].variable.states; }
  std::size_t cardinality(std::size_t node) const { return nodes_[node].variable.states.size(); }
  std::span<const std::size_t> parents(std::size_t node) const { return nodes_[node].parents; }
  std::span<const double> importance(std::size_t node) const { return nodes_[node].importance; }
  std::span<const double> cpt(std::size_t node) const { return nodes_[node].cpt; }
  std::span<const std::size_t> topo_order() const { return topo_order_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  std::optional<std::size_t> state_index(std::size_t node, std::string_view state) const;

  std::size_t row_count(std::size_t node) const;

  /// CPT row selected by the parent states inside a full per-node assignment.
  std::span<const double> row(std::size_t node, std::span<const std::size_t> assignment) const;
  std::span<const double> row_at(std::size_t node, std::size_t row_index) const;

 private:
  struct Node {
    Variable variable;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> strides;
    std::vector<double> importance;
    std::vector<double> cpt;
  };

  NetworkData data_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> topo_order_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

inline ValidationReport validate(const Network& net) { return validate(net.data()); }

/// True iff the undirected skeleton over the chance nodes contains a cycle.
bool is_multiply_connected(const Network& net);

struct Evidence {
  std::map<std::string, std::string> assignments;

  bool operator==(const Evidence&) const = default;
};

struct Query {
  std::string target;
  std::string target_state;

  bool operator==(const Query&) const = default;
};

/// Per-node observed state index, indexed like the network's nodes.
using Observations = std::vector<std::optional<std::size_t>>;

struct ResolvedQuery {
  std::size_t node;
  std::size_t state;
};

/// Throws ContractViolation on an unknown variable or state.
Observations resolve(const Network& net, const Evidence& ev);

/// Throws ContractViolation on an unknown target/state or when the target is observed.
ResolvedQuery resolve(const Network& net, const Query& q, const Observations& obs);

}  // namespace timewise
