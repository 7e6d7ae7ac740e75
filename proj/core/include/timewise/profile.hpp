#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "timewise/anytime.hpp"
#include "timewise/problems.hpp"

namespace timewise {

struct AnalyticSource {
  bool operator==(const AnalyticSource&) const = default;
};

struct EmpiricalSource {
  std::size_t trials = 0;
  double quantile = 0.95;

  bool operator==(const EmpiricalSource&) const = default;
};

/// Expected precision as a function of computation time for one strategy on
/// one problem class. Points are (seconds, precision) with strictly
/// increasing times and non-decreasing precision.
struct PrecisionProfile {
  std::string strategy_id;
  std::string problem_class;
  std::vector<std::pair<double, double>> points;
  double steps_per_second = 1.0;
  std::variant<AnalyticSource, EmpiricalSource> source;

  /// Throws ContractViolation when an invariant fails.
  void check() const;

  bool operator==(const PrecisionProfile&) const = default;
};

/// Linear interpolation between knots, clamped to the end values outside them.
double eval_profile(const PrecisionProfile& profile, double t);

using EngineFactory = std::function<AnytimeState(const Problem&, std::uint64_t seed)>;
using ProblemSampler = std::function<Problem(std::uint64_t seed)>;

struct ProfileRequest {
  std::string strategy_id;
  std::string problem_class;
  /// Strictly ascending step counts at which the error is recorded.
  std::vector<std::uint64_t> checkpoints;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  /// Error quantile that defines the profile's precision.
  double quantile = 0.95;
  /// Fixed step rate. When absent, the rate is measured from the trials.
  std::optional<double> steps_per_second;
  /// Fresh problems tried per trial when the oracle rejects one.
  std::size_t max_resamples = 8;
};

/// Empirical profile: for trial i (seed + i) a problem is drawn, the engine
/// run, and |mean - exact| recorded at every checkpoint. Precision at a
/// checkpoint is 1 - 2 * quantile(error), clamped to [0, 1], then made
/// non-decreasing by a running maximum. Engines that declare their own
/// precision contribute the lower (1 - quantile) quantile of it instead.
PrecisionProfile profile_strategy(const EngineFactory& factory, const ProblemSampler& sampler,
                                  const ProfileRequest& request);

/// {strategy_id, problem_class, source, steps_per_second, points: [[t, precision], ...]}
PrecisionProfile parse_profile(std::string_view text);
std::string serialize_profile(const PrecisionProfile& profile);
PrecisionProfile load_profile(const std::filesystem::path& path);
void save_profile(const PrecisionProfile& profile, const std::filesystem::path& path);

/// Every *.json file in `dir`, in filename order.
std::vector<PrecisionProfile> load_catalog(const std::filesystem::path& dir);

/// Environment variable naming the default catalog directory.
inline constexpr const char* kCatalogEnvVar = "TIMEWISE_CATALOG";

}  // namespace timewise
