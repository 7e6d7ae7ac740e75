#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace timewise {

/// Interval estimate of a query probability, readable between any two steps.
struct Estimate {
  double mean = 0.5;
  double low = 0.0;
  double high = 1.0;
  /// Steps consumed so far.
  std::uint64_t support = 0;
  /// True when the interval is a guarantee (or a stated statistical bound)
  /// rather than a calibration-based heuristic figure.
  bool well_founded = false;

  double width() const { return high - low; }
  double precision() const { return 1.0 - width(); }
};

/// Common contract of the interruptible inference strategies.
///
/// Stepping is deterministic given the construction arguments (including the
/// seed). Engines that finish stop changing once `completed()` holds.
class AnytimeEngine {
 public:
  virtual ~AnytimeEngine() = default;

  virtual std::unique_ptr<AnytimeEngine> clone() const = 0;
  /// Default strategy token, e.g. "sample" or "bounds".
  virtual std::string_view kind() const = 0;
  /// What one step buys, for reports.
  virtual std::string_view step_unit() const = 0;
  virtual void advance(std::uint64_t steps) = 0;
  virtual Estimate estimate() const = 0;
  virtual bool completed() const = 0;
  virtual std::uint64_t steps_taken() const = 0;
  virtual std::uint64_t seed() const { return 0; }
  /// True when the reported precision is asserted by the strategy itself
  /// (compiled defaults) instead of being an error bound on the mean.
  virtual bool declares_precision() const { return false; }
};

/// Value-semantic handle over an engine; copies are independent deep clones.
class AnytimeState {
 public:
  explicit AnytimeState(std::unique_ptr<AnytimeEngine> engine);
  AnytimeState(std::unique_ptr<AnytimeEngine> engine, std::string strategy_id);

  AnytimeState(const AnytimeState& other);
  AnytimeState& operator=(const AnytimeState& other);
  AnytimeState(AnytimeState&&) noexcept = default;
  AnytimeState& operator=(AnytimeState&&) noexcept = default;
  ~AnytimeState() = default;

  const std::string& strategy_id() const { return strategy_id_; }
  AnytimeState& relabel(std::string strategy_id);

  void advance(std::uint64_t steps) { engine_->advance(steps); }
  Estimate estimate() const { return engine_->estimate(); }
  bool completed() const { return engine_->completed(); }
  std::uint64_t steps_taken() const { return engine_->steps_taken(); }
  std::uint64_t seed() const { return engine_->seed(); }
  std::string_view step_unit() const { return engine_->step_unit(); }
  bool declares_precision() const { return engine_->declares_precision(); }

  const AnytimeEngine& engine() const { return *engine_; }

 private:
  std::unique_ptr<AnytimeEngine> engine_;
  std::string strategy_id_;
};

/// Advances exactly `n` steps, or to completion for engines that finish.
AnytimeState step(AnytimeState state, std::uint64_t n);

inline Estimate current_estimate(const AnytimeState& state) { return state.estimate(); }

}  // namespace timewise
