#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "timewise/anytime.hpp"
#include "timewise/exact.hpp"
#include "timewise/profile.hpp"
#include "timewise/value.hpp"

namespace timewise {

inline constexpr std::size_t kDefaultGridPoints = 512;

/// Comprehensive value of one strategy over a uniform time grid.
struct ValueCurve {
  std::string strategy_id;
  std::vector<ValuePoint> grid;
};

/// Samples t = horizon * i / (grid_n - 1). At each t the profile's precision
/// gives width 1 - precision, the context's object-value model gives V_o, and
/// V_c = V_o * D(t).
ValueCurve value_curve(const PrecisionProfile& profile, const ValueContext& ctx, double horizon,
                       std::size_t grid_n = kDefaultGridPoints);

struct Peak {
  double t_max = 0.0;
  double v_c_max = 0.0;
  std::size_t index = 0;
};

/// Grid argmax of V_c; the earliest point wins ties.
Peak peak(const ValueCurve& curve);

struct MetaDecision {
  std::string selected;
  double t_max = 0.0;
  double v_c_max = 0.0;
  std::vector<ValueCurve> curves;
  /// R_c is the supplied complete-resource figure (the horizon when absent); R_a = t_max.
  ResourceLedger ledger;
  /// Wall-clock spent choosing. Reported only; never part of the choice.
  double metalevel_overhead_seconds = 0.0;
  /// Step rate of the selected profile, for turning t_max into a step budget.
  double steps_per_second = 1.0;
};

/// Picks the strategy with the highest peak V_c. Ties go to the smaller
/// t_max, then to the lexicographically smaller strategy id.
MetaDecision select_strategy(std::span<const PrecisionProfile> catalog, const ValueContext& ctx, double horizon,
                             std::size_t grid_n = kDefaultGridPoints,
                             std::optional<double> complete_seconds = std::nullopt);

/// Closed grid index range [first, last] with the matching times.
struct GridInterval {
  std::size_t first = 0;
  std::size_t last = 0;
  double t_start = 0.0;
  double t_end = 0.0;

  bool operator==(const GridInterval&) const = default;
};

/// Maximal grid intervals on which V_c strictly increases.
std::vector<GridInterval> dominance_intervals(const ValueCurve& curve);

/// Maximal grid intervals on which V_c does not increase; together with
/// dominance_intervals they cover every grid step.
std::vector<GridInterval> non_increasing_segments(const ValueCurve& curve);

struct DiscontinuityBound {
  double delta = 0.0;
  double epsilon = 0.0;
};

/// Largest |V_c(r2) - V_c(r1)| over grid pairs whose resource fractions
/// (t / R_c) differ by at most delta.
DiscontinuityBound check_bounded_discontinuity(const ValueCurve& curve, const ResourceLedger& ledger, double delta);

struct EndpointReport {
  bool converged = false;
  /// True when the engine never completed and the budget cap stood in for completion.
  bool statistical = false;
  double final_mean = 0.0;
  double exact = 0.0;
  std::uint64_t steps = 0;
};

/// Runs a fresh engine to completion (or `max_steps` for engines that never
/// finish) and compares its mean with the exact posterior.
EndpointReport check_endpoint_convergence(const std::function<AnytimeState()>& factory, const Network& net,
                                          const Evidence& ev, const Query& q, double tolerance,
                                          std::uint64_t max_steps = 1'000'000);

enum class StopReason { kReachedTMax, kValueDeclining, kEngineCompleted };

std::string_view to_string(StopReason reason);

struct MonitorCheckpoint {
  std::uint64_t steps = 0;
  double t = 0.0;
  double precision = 0.0;
  double object_value = 0.0;
  double discount = 1.0;
  double comprehensive_value = 0.0;
};

struct ExecutionLog {
  std::vector<MonitorCheckpoint> checkpoints;
  StopReason reason = StopReason::kReachedTMax;
};

struct MonitoredRun {
  Estimate estimate;
  ExecutionLog log;
};

/// Steps the selected engine toward t_max in chunks of `check_every` steps,
/// recomputing realised V_c from realised precision at each checkpoint (time
/// is steps / steps_per_second). Halts early after two consecutive decreases.
MonitoredRun execute_with_monitoring(const MetaDecision& decision, AnytimeState state, const ValueContext& ctx,
                                     std::uint64_t check_every);

}  // namespace timewise
