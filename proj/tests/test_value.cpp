#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "timewise/random.hpp"
#include "timewise/value.hpp"

namespace timewise {
namespace {

ValueContext symmetric_context() {
  ValueContext ctx;
  ctx.utilities = {1.0, 0.0, 0.0, 1.0};
  return ctx;
}

ValueContext random_context(Rng& rng) {
  ValueContext ctx;
  const double nc = rng.uniform(-50.0, 50.0);
  const double tn = rng.uniform(-50.0, 50.0);
  ctx.utilities = {nc + rng.uniform(1.0, 100.0), tn, nc, tn + rng.uniform(1.0, 100.0)};
  const double a = rng.uniform(0.0, 0.8);
  ctx.belief_low = a;
  ctx.belief_high = a + rng.uniform(0.1, 1.0 - a);
  return ctx;
}

TEST(Threshold, Examples) {
  EXPECT_EQ(treatment_threshold({1, 0, 0, 1}), 0.5);
  EXPECT_EQ(treatment_threshold({100, -20, -80, 0}), 0.1);
}

TEST(Threshold, MatchesBruteForceSwitchPoint) {
  Rng rng(5);
  constexpr std::size_t kGrid = 100001;
  const double step = 1.0 / (kGrid - 1);
  for (int i = 0; i < 20; ++i) {
    const UtilityTable u = random_context(rng).utilities;
    EXPECT_NEAR(testing::grid_switch_point(u, kGrid), treatment_threshold(u), step + 1e-12);
  }
  EXPECT_NEAR(testing::grid_switch_point({100, -20, -80, 0}, kGrid), 0.1, step + 1e-12);
}

TEST(Threshold, AffineInvariance) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const UtilityTable u = random_context(rng).utilities;
    const double a = rng.uniform(0.01, 50.0);
    const double b = rng.uniform(-100.0, 100.0);
    EXPECT_NEAR(treatment_threshold(u.scaled(a).shifted(b)), treatment_threshold(u), 1e-12);
  }
}

TEST(Threshold, DegenerateTablesAreRejected) {
  EXPECT_THROW(treatment_threshold({0, 0, 0, 1}), ContractViolation);
  EXPECT_THROW(treatment_threshold({1, 1, 0, 1}), ContractViolation);
}

TEST(ObjectValue, SymmetricContextAtZeroWidth) {
  EXPECT_NEAR(object_value(symmetric_context(), 0.0), 0.75, 1e-6);
  EXPECT_NEAR(testing::monte_carlo_object_value(symmetric_context(), 0.0, 100000, 1), 0.75, 5e-3);
}

TEST(ObjectValue, FullWidthLosesValue) {
  const ValueContext ctx = symmetric_context();
  EXPECT_LT(object_value(ctx, 1.0), object_value(ctx, 0.0));
  EXPECT_NEAR(object_value(ctx, 1.0), testing::monte_carlo_object_value(ctx, 1.0, 100000, 2), 2e-2);
}

TEST(ObjectValue, OptimalIsTheZeroWidthValue) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const ValueContext ctx = random_context(rng);
    EXPECT_EQ(optimal_object_value(ctx), object_value(ctx, 0.0));
    for (double w = 0.0; w <= 1.0; w += 0.125) EXPECT_GE(optimal_object_value(ctx) + 1e-12, object_value(ctx, w));
  }
}

TEST(ObjectValue, SingleActionRegionIsConstantAndLinear) {
  ValueContext ctx;
  ctx.utilities = {100, -20, -80, 0};
  ctx.belief_low = 0.65;
  ctx.belief_high = 0.85;
  // Mean p is 0.75, so treating earns 0.75 * 100 + 0.25 * (-20).
  EXPECT_NEAR(optimal_object_value(ctx), 70.0, 1e-9);
  // The noisy estimate p + e stays above 0.1 for every w in [0, 1].
  for (double w : {0.0, 0.3, 0.7, 1.0}) EXPECT_NEAR(object_value(ctx, w), 70.0, 1e-9);
}

TEST(ObjectValue, MonotoneAndAgreesWithMonteCarlo) {
  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    const ValueContext ctx = random_context(rng);
    double prev = object_value(ctx, 0.0);
    for (int k = 1; k <= 10; ++k) {
      const double w = k / 10.0;
      const double v = object_value(ctx, w);
      EXPECT_LE(v, prev + 1e-9);
      prev = v;
    }
    const double scale = std::abs(ctx.utilities.treat_cond - ctx.utilities.notreat_cond) +
                         std::abs(ctx.utilities.notreat_nocond - ctx.utilities.treat_nocond);
    EXPECT_NEAR(object_value(ctx, 0.5), testing::monte_carlo_object_value(ctx, 0.5, 100000, 100 + i),
                2e-2 * scale);
  }
}

TEST(ObjectValue, RejectsOutOfRangeWidth) {
  EXPECT_THROW(object_value(symmetric_context(), -0.1), ContractViolation);
  EXPECT_THROW(object_value(symmetric_context(), 1.1), ContractViolation);
}

TEST(ObjectValue, LinearModelIsPrecision) {
  ValueContext ctx = symmetric_context();
  ctx.object_model = ObjectValueModel::kLinearPrecision;
  EXPECT_EQ(modeled_object_value(ctx, 0.25), 0.75);
  ctx.object_model = ObjectValueModel::kPreposterior;
  EXPECT_EQ(modeled_object_value(ctx, 0.25), object_value(ctx, 0.25));
}

TEST(Discount, Examples) {
  EXPECT_EQ(discount(ExponentialDiscount{0.1}, 0.0), 1.0);
  EXPECT_NEAR(discount(ExponentialDiscount{0.1}, 10.0), 0.367879441171442, 1e-12);
  EXPECT_EQ(discount(StepDiscount{5.0, 0.0}, 4.9), 1.0);
  EXPECT_EQ(discount(StepDiscount{5.0, 0.0}, 5.1), 0.0);
  EXPECT_EQ(discount(StepDiscount{5.0, 0.25}, 5.0), 0.25);
  EXPECT_NEAR(discount(LogisticDiscount{2.0, 1.0}, 1.0), 0.5, 1e-15);
  EXPECT_THROW(discount(ExponentialDiscount{0.1}, -1.0), ContractViolation);
}

TEST(Discount, NonIncreasingAndInRange) {
  const std::vector<DiscountFunction> fns{ExponentialDiscount{0.0}, ExponentialDiscount{1.5}, StepDiscount{0.05, 0.0},
                                          StepDiscount{2.0, 0.4}, LogisticDiscount{3.0, 2.0}, LogisticDiscount{0.5, 0.0}};
  for (const auto& d : fns) {
    double prev = discount(d, 0.0);
    EXPECT_LE(prev, 1.0);
    for (int i = 1; i <= 1000; ++i) {
      const double v = discount(d, i * 0.01);
      EXPECT_LE(v, prev);
      EXPECT_GE(v, 0.0);
      prev = v;
    }
  }
}

TEST(Discount, BadParameters) {
  EXPECT_THROW(check(DiscountFunction{ExponentialDiscount{-1.0}}), ContractViolation);
  EXPECT_THROW(check(DiscountFunction{StepDiscount{1.0, 1.5}}), ContractViolation);
  EXPECT_THROW(check(DiscountFunction{LogisticDiscount{-1.0, 0.0}}), ContractViolation);
}

TEST(ComprehensiveValue, Examples) {
  EXPECT_EQ(comprehensive_value(0.75, 1.0), 0.75);
  EXPECT_EQ(comprehensive_value(0.75, 0.0), 0.0);
  EXPECT_NEAR(comprehensive_value(0.75, 0.367879), 0.275909, 1e-6);
  EXPECT_NEAR(comprehensive_value(1.5, 0.3), 2.0 * comprehensive_value(0.75, 0.3), 1e-15);
  EXPECT_THROW(comprehensive_value(0.75, 1.5), ContractViolation);
}

TEST(Tradeoff, Examples) {
  const std::vector<std::pair<double, double>> good{{1, 0.2}, {2, 0.5}, {3, 0.9}};
  EXPECT_TRUE(validate_tradeoff(good).valid);
  const std::vector<std::pair<double, double>> bad{{1, 0.5}, {2, 0.4}};
  const auto report = validate_tradeoff(bad);
  EXPECT_FALSE(report.valid);
  ASSERT_TRUE(report.first_violation.has_value());
  EXPECT_EQ(report.first_violation->first, 0u);
  EXPECT_EQ(report.first_violation->second, 1u);
  const std::vector<std::pair<double, double>> flat{{1, 0.3}, {2, 0.3}, {5, 0.3}};
  EXPECT_TRUE(validate_tradeoff(flat).valid);
  const std::vector<std::pair<double, double>> unsorted{{2, 0.3}, {1, 0.4}};
  EXPECT_THROW(validate_tradeoff(unsorted), ContractViolation);
  const std::vector<std::pair<double, double>> single{{1, 0.3}};
  EXPECT_THROW(validate_tradeoff(single), ContractViolation);
}

TEST(ValueContextFile, RoundTripAndErrors) {
  const ValueContext ctx = parse_value_context(R"({
    "utilities": {"tc": 100, "tn": -20, "nc": -80, "nn": 0},
    "discount": {"kind": "logistic", "params": {"steepness": 2, "midpoint": 3}},
    "belief": [0.1, 0.6],
    "combination": "multiplicative",
    "phi_note": "ward"
  })");
  EXPECT_EQ(ctx.utilities.treat_cond, 100.0);
  EXPECT_EQ(ctx.belief_high, 0.6);
  EXPECT_EQ(std::get<LogisticDiscount>(ctx.discount).midpoint, 3.0);
  const ValueContext again = parse_value_context(serialize_value_context(ctx));
  EXPECT_EQ(serialize_value_context(again), serialize_value_context(ctx));

  EXPECT_THROW(parse_value_context(R"({"utilities": {"tc": 1, "tn": 0, "nc": 0, "nn": 1},
      "discount": {"kind": "exponential", "params": {"lambda": 1}}, "belief": [0.6, 0.2],
      "combination": "multiplicative", "phi_note": ""})"),
               ParseError);
  EXPECT_THROW(parse_value_context(R"({"utilities": {"tc": 1, "tn": 0, "nc": 0, "nn": 1},
      "discount": {"kind": "exponential", "params": {"lambda": 1}}, "belief": [0, 1],
      "combination": "additive", "phi_note": ""})"),
               ParseError);
}

}  // namespace
}  // namespace timewise
