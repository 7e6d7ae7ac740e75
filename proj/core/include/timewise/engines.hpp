#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timewise/anytime.hpp"
#include "timewise/network.hpp"

namespace timewise {

/// Normal-approximation z value for the sampler's 95% interval.
inline constexpr double kSamplerZ = 1.96;

/// Likelihood-weighted forward sampling. One step draws one sample in
/// topological order; observed nodes are clamped and multiply the weight.
///
/// The interval is mean +/- z * sqrt(mean (1 - mean) / n_eff), clamped to
/// [0, 1], with n_eff = (sum w)^2 / sum w^2. With no weight yet it is [0, 1].
AnytimeState make_logic_sampler(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q,
                                std::uint64_t seed);

/// Best-first enumeration of complete instantiations in descending joint
/// probability. One step yields one complete evidence-consistent instantiation.
///
/// With a/b the explored mass where the target does/does not hold and u the
/// unexplored mass, the interval is [a/(a+b+u), (a+u)/(a+b+u)]. It only
/// tightens and always contains the exact posterior.
AnytimeState make_bound_propagator(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q);

/// Runs exact inference on successively fuller models: rung k drops every arc
/// whose importance is below ladder[k]. One step completes one rung.
///
/// `ladder` must be strictly descending within [0, 1] and end with 0.
/// `rung_precision`, when given, supplies the calibrated precision per rung;
/// otherwise non-final rungs report the vacuous interval.
AnytimeState make_completeness_modulator(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q,
                                         std::vector<double> ladder,
                                         std::optional<std::vector<double>> rung_precision = std::nullopt);

struct DefaultPolicyEntry {
  std::string action;
  double precision = 0.0;
  std::uint64_t availability_steps = 0;
  /// Probability the compiled advice stands for; centre of the reported interval.
  double mean = 0.5;
};

struct DefaultPolicyTable {
  std::map<std::string, DefaultPolicyEntry> entries;
};

/// JSON list of {context_key, action, precision, availability_steps[, mean]}.
DefaultPolicyTable parse_default_policy_table(std::string_view text);
DefaultPolicyTable load_default_policy_table(const std::filesystem::path& path);

/// Compiled advice: nothing before `availability_steps`, then the entry's
/// fixed precision forever. Throws ContractViolation on an unknown key.
AnytimeState make_default_policy(const DefaultPolicyTable& table, const std::string& context_key);

// Convenience overloads that take a copy of the network.
inline AnytimeState make_logic_sampler(const Network& net, const Evidence& ev, const Query& q, std::uint64_t seed) {
  return make_logic_sampler(std::make_shared<const Network>(net), ev, q, seed);
}
inline AnytimeState make_bound_propagator(const Network& net, const Evidence& ev, const Query& q) {
  return make_bound_propagator(std::make_shared<const Network>(net), ev, q);
}
inline AnytimeState make_completeness_modulator(const Network& net, const Evidence& ev, const Query& q,
                                                std::vector<double> ladder,
                                                std::optional<std::vector<double>> rung_precision = std::nullopt) {
  return make_completeness_modulator(std::make_shared<const Network>(net), ev, q, std::move(ladder),
                                     std::move(rung_precision));
}

}  // namespace timewise
