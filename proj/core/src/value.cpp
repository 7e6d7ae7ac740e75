#include "timewise/value.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "timewise/errors.hpp"
#include "timewise/network_io.hpp"

namespace timewise {

void UtilityTable::check() const {
  if (!(treat_cond > notreat_cond)) throw ContractViolation("utilities: treating the condition must beat not treating");
  if (!(notreat_nocond > treat_nocond)) {
    throw ContractViolation("utilities: not treating the healthy must beat treating");
  }
}

UtilityTable UtilityTable::scaled(double factor) const {
  return {treat_cond * factor, treat_nocond * factor, notreat_cond * factor, notreat_nocond * factor};
}

UtilityTable UtilityTable::shifted(double offset) const {
  return {treat_cond + offset, treat_nocond + offset, notreat_cond + offset, notreat_nocond + offset};
}

double treatment_threshold(const UtilityTable& u) {
  u.check();
  const double harm = u.notreat_nocond - u.treat_nocond;
  const double benefit = u.treat_cond - u.notreat_cond;
  return harm / (benefit + harm);
}

void check(const DiscountFunction& d) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ExponentialDiscount>) {
          if (!(f.rate >= 0.0)) throw ContractViolation("exponential discount needs rate >= 0");
        } else if constexpr (std::is_same_v<T, StepDiscount>) {
          if (!(f.deadline >= 0.0)) throw ContractViolation("step discount needs deadline >= 0");
          if (!(f.floor >= 0.0 && f.floor <= 1.0)) throw ContractViolation("step discount floor must lie in [0,1]");
        } else {
          if (!(f.steepness >= 0.0)) throw ContractViolation("logistic discount needs steepness >= 0");
          if (!std::isfinite(f.midpoint)) throw ContractViolation("logistic discount needs a finite midpoint");
        }
      },
      d);
}

double discount(const DiscountFunction& d, double t) {
  if (!(t >= 0.0)) throw ContractViolation("discount time must be non-negative");
  return std::visit(
      [t](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ExponentialDiscount>) {
          return std::exp(-f.rate * t);
        } else if constexpr (std::is_same_v<T, StepDiscount>) {
          return t < f.deadline ? 1.0 : f.floor;
        } else {
          return 1.0 / (1.0 + std::exp(f.steepness * (t - f.midpoint)));
        }
      },
      d);
}

void ValueContext::check() const {
  utilities.check();
  timewise::check(discount);
  if (!(belief_low >= 0.0 && belief_low < belief_high && belief_high <= 1.0)) {
    throw ContractViolation("belief interval must satisfy 0 <= l0 < u0 <= 1");
  }
}

namespace {

// Trapezoid weights on n uniform points, normalised to sum to one.
std::vector<double> trapezoid_weights(std::size_t n) {
  std::vector<double> w(n, 1.0 / static_cast<double>(n - 1));
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace

double object_value(const ValueContext& ctx, double width) {
  if (!(width >= 0.0 && width <= 1.0)) throw ContractViolation("object_value: width must lie in [0,1]");
  ctx.check();
  const UtilityTable& u = ctx.utilities;
  const double threshold = treatment_threshold(u);

  static const std::vector<double> p_weights = trapezoid_weights(kBeliefGridPoints);
  static const std::vector<double> e_weights = trapezoid_weights(kErrorGridPoints);

  std::vector<double> errors(kErrorGridPoints);
  for (std::size_t j = 0; j < kErrorGridPoints; ++j) {
    errors[j] = -0.5 * width + width * static_cast<double>(j) / static_cast<double>(kErrorGridPoints - 1);
  }
  // Weight of error nodes j..end, so the treat share for a given p is one lookup.
  std::vector<double> tail(kErrorGridPoints + 1, 0.0);
  for (std::size_t j = kErrorGridPoints; j-- > 0;) tail[j] = tail[j + 1] + e_weights[j];

  const double span = ctx.belief_high - ctx.belief_low;
  double total = 0.0;
  for (std::size_t i = 0; i < kBeliefGridPoints; ++i) {
    const double p = ctx.belief_low + span * static_cast<double>(i) / static_cast<double>(kBeliefGridPoints - 1);
    // clamp(p + e) > threshold is monotone in e, so the treating nodes form a suffix.
    const auto first = std::partition_point(errors.begin(), errors.end(), [&](double e) {
      return !(std::clamp(p + e, 0.0, 1.0) > threshold);
    });
    const double treat_share = tail[static_cast<std::size_t>(first - errors.begin())];
    const double treat = p * u.treat_cond + (1.0 - p) * u.treat_nocond;
    const double wait = p * u.notreat_cond + (1.0 - p) * u.notreat_nocond;
    total += p_weights[i] * (treat_share * treat + (1.0 - treat_share) * wait);
  }
  return total;
}

double optimal_object_value(const ValueContext& ctx) { return object_value(ctx, 0.0); }

double modeled_object_value(const ValueContext& ctx, double width) {
  switch (ctx.object_model) {
    case ObjectValueModel::kLinearPrecision:
      if (!(width >= 0.0 && width <= 1.0)) throw ContractViolation("object value: width must lie in [0,1]");
      return 1.0 - width;
    case ObjectValueModel::kPreposterior:
      break;
  }
  return object_value(ctx, width);
}

double comprehensive_value(double object_value, double discount_factor) {
  if (!(discount_factor >= 0.0 && discount_factor <= 1.0)) {
    throw ContractViolation("discount factor must lie in [0,1]");
  }
  return object_value * discount_factor;
}

TradeoffReport validate_tradeoff(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw ContractViolation("tradeoff check needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) throw ContractViolation("tradeoff delays must be strictly increasing");
  }
  TradeoffReport report;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].second < points[i - 1].second) {
      report.valid = false;
      report.first_violation = std::pair{i - 1, i};
      break;
    }
  }
  return report;
}

namespace {

using nlohmann::json;

DiscountFunction parse_discount(const json& j) {
  if (!j.is_object()) throw ParseError("value context: discount must be an object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ParseError("value context: discount needs a string kind");
  const json params = j.value("params", json::object());
  if (!params.is_object()) throw ParseError("value context: discount params must be an object");
  const std::string k = kind->get<std::string>();
  const std::string where = "discount '" + k + "'";
  if (k == "exponential") return ExponentialDiscount{detail::number_at(params, "lambda", where)};
  if (k == "step") {
    return StepDiscount{detail::number_at(params, "deadline", where), detail::number_at(params, "floor", where)};
  }
  if (k == "logistic") {
    return LogisticDiscount{detail::number_at(params, "steepness", where), detail::number_at(params, "midpoint", where)};
  }
  throw ParseError("value context: unknown discount kind '" + k + "'");
}

}  // namespace

ValueContext parse_value_context(std::string_view text) {
  const json root = detail::parse_json(text);
  if (!root.is_object()) throw ParseError("value context must be a JSON object");
  ValueContext ctx;

  auto utilities = root.find("utilities");
  if (utilities == root.end() || !utilities->is_object()) throw ParseError("value context: missing utilities object");
  ctx.utilities = {detail::number_at(*utilities, "tc", "utilities"), detail::number_at(*utilities, "tn", "utilities"),
                   detail::number_at(*utilities, "nc", "utilities"), detail::number_at(*utilities, "nn", "utilities")};

  auto disc = root.find("discount");
  if (disc == root.end()) throw ParseError("value context: missing discount");
  ctx.discount = parse_discount(*disc);

  if (auto belief = root.find("belief"); belief != root.end()) {
    if (!belief->is_array() || belief->size() != 2 || !(*belief)[0].is_number() || !(*belief)[1].is_number()) {
      throw ParseError("value context: belief must be [l0, u0]");
    }
    ctx.belief_low = (*belief)[0].get<double>();
    ctx.belief_high = (*belief)[1].get<double>();
  }
  if (auto comb = root.find("combination"); comb != root.end()) {
    if (!comb->is_string() || comb->get<std::string>() != "multiplicative") {
      throw ParseError("value context: only the multiplicative combination rule is supported");
    }
  }
  if (auto model = root.find("object_model"); model != root.end()) {
    const std::string m = model->is_string() ? model->get<std::string>() : "";
    if (m == "preposterior") {
      ctx.object_model = ObjectValueModel::kPreposterior;
    } else if (m == "linear") {
      ctx.object_model = ObjectValueModel::kLinearPrecision;
    } else {
      throw ParseError("value context: object_model must be \"preposterior\" or \"linear\"");
    }
  }
  if (auto note = root.find("phi_note"); note != root.end()) {
    if (!note->is_string()) throw ParseError("value context: phi_note must be a string");
    ctx.phi_note = note->get<std::string>();
  }
  try {
    ctx.check();
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("value context: ") + e.what());
  }
  return ctx;
}

ValueContext load_value_context(const std::filesystem::path& path) {
  return parse_value_context(read_text_file(path));
}

std::string serialize_value_context(const ValueContext& ctx) {
  using ordered = nlohmann::ordered_json;
  ordered discount_json = std::visit(
      [](const auto& f) -> ordered {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ExponentialDiscount>) {
          return {{"kind", "exponential"}, {"params", {{"lambda", f.rate}}}};
        } else if constexpr (std::is_same_v<T, StepDiscount>) {
          return {{"kind", "step"}, {"params", {{"deadline", f.deadline}, {"floor", f.floor}}}};
        } else {
          return {{"kind", "logistic"}, {"params", {{"steepness", f.steepness}, {"midpoint", f.midpoint}}}};
        }
      },
      ctx.discount);
  ordered root = {
      {"utilities",
       {{"tc", ctx.utilities.treat_cond},
        {"tn", ctx.utilities.treat_nocond},
        {"nc", ctx.utilities.notreat_cond},
        {"nn", ctx.utilities.notreat_nocond}}},
      {"discount", discount_json},
      {"belief", {ctx.belief_low, ctx.belief_high}},
      {"combination", "multiplicative"},
      {"object_model", ctx.object_model == ObjectValueModel::kLinearPrecision ? "linear" : "preposterior"},
      {"phi_note", ctx.phi_note},
  };
  return root.dump(2) + "\n";
}

}  // namespace timewise
