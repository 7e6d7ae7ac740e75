#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace timewise {

/// Utilities of the treat / no-treat decision against condition present / absent.
/// Treatment must help the sick (tc > nc) and hurt the healthy (nn > tn).
struct UtilityTable {
  double treat_cond = 1.0;
  double treat_nocond = 0.0;
  double notreat_cond = 0.0;
  double notreat_nocond = 1.0;

  /// Throws ContractViolation when the ordering invariants fail.
  void check() const;
  UtilityTable scaled(double factor) const;
  UtilityTable shifted(double offset) const;
};

/// Probability above which treating beats not treating.
double treatment_threshold(const UtilityTable& u);

/// e^{-rate t}
struct ExponentialDiscount {
  double rate = 0.0;
};

/// 1 before the deadline, `floor` from the deadline on.
struct StepDiscount {
  double deadline = 0.0;
  double floor = 0.0;
};

/// 1 / (1 + e^{steepness (t - midpoint)})
struct LogisticDiscount {
  double steepness = 1.0;
  double midpoint = 0.0;
};

/// Multiplicative time discount applied to object-related value.
using DiscountFunction = std::variant<ExponentialDiscount, StepDiscount, LogisticDiscount>;

/// Throws ContractViolation for parameters that break D non-increasing on [0,1].
void check(const DiscountFunction& d);

/// Throws ContractViolation for negative t.
double discount(const DiscountFunction& d, double t);

enum class CombinationRule { kMultiplicative };

/// How object-related value is obtained from a precision level.
enum class ObjectValueModel {
  /// Preposterior expected utility of acting on a noisy estimate (object_value).
  kPreposterior,
  /// V_o = precision; a stand-in used for illustrative catalogues.
  kLinearPrecision,
};

struct ValueContext {
  UtilityTable utilities;
  DiscountFunction discount = ExponentialDiscount{0.0};
  /// Prior range of the true posterior p, which is taken as uniform on it.
  double belief_low = 0.0;
  double belief_high = 1.0;
  CombinationRule combination = CombinationRule::kMultiplicative;
  ObjectValueModel object_model = ObjectValueModel::kPreposterior;
  std::string phi_note;

  void check() const;
};

/// Quadrature grid sizes for object_value.
inline constexpr std::size_t kBeliefGridPoints = 2001;
inline constexpr std::size_t kErrorGridPoints = 201;

/// Expected utility of acting on an estimate whose error is uniform on
/// [-w/2, w/2], with the true p uniform on the belief interval.
///
/// The action treats iff clamp(p + e, 0, 1) exceeds the treatment threshold
/// (ties do not treat). Both expectations use the trapezoid rule on fixed
/// uniform grids, so the result is deterministic.
double object_value(const ValueContext& ctx, double width);

/// [V_o]: the value of acting on the exact posterior, object_value(ctx, 0).
double optimal_object_value(const ValueContext& ctx);

/// Object value under the context's ObjectValueModel.
double modeled_object_value(const ValueContext& ctx, double width);

/// V_c = V_o * factor. The factor must lie in [0, 1].
double comprehensive_value(double object_value, double discount_factor);

struct ValuePoint {
  double t = 0.0;
  double precision = 0.0;
  double object_value = 0.0;
  double discount = 1.0;
  double comprehensive_value = 0.0;
};

struct TradeoffReport {
  bool valid = true;
  /// Indices (i, i + 1) of the first pair where precision drops.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
};

/// Checks precision is non-decreasing in delay over (delay, precision) points.
/// Requires at least two points with strictly increasing delays.
TradeoffReport validate_tradeoff(std::span<const std::pair<double, double>> points);

/// {utilities: {tc, tn, nc, nn}, discount: {kind, params}, belief: [l0, u0],
///  combination: "multiplicative", phi_note[, object_model]}
ValueContext parse_value_context(std::string_view text);
ValueContext load_value_context(const std::filesystem::path& path);
std::string serialize_value_context(const ValueContext& ctx);

}  // namespace timewise
