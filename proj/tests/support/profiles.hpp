#pragma once

#include <string>
#include <utility>
#include <vector>

#include "timewise/control.hpp"
#include "timewise/profile.hpp"

namespace timewise::testing {

// Analytic profile with `knots` evenly spaced points of `precision` on [0, span].
template <typename F>
PrecisionProfile knot_profile(std::string id, F precision, double span = 20.0, std::size_t knots = 4001) {
  PrecisionProfile p;
  p.strategy_id = std::move(id);
  p.problem_class = "test";
  p.source = AnalyticSource{};
  p.steps_per_second = 1000.0;
  for (std::size_t i = 0; i < knots; ++i) {
    const double t = span * static_cast<double>(i) / static_cast<double>(knots - 1);
    p.points.emplace_back(t, precision(t));
  }
  return p;
}

inline PrecisionProfile flat_default_profile(std::string id, double precision, double available_at) {
  PrecisionProfile p;
  p.strategy_id = std::move(id);
  p.problem_class = "test";
  p.source = AnalyticSource{};
  p.steps_per_second = 1000.0;
  p.points = {{0.0, 0.0}, {available_at, precision}, {1000.0, precision}};
  return p;
}

inline ValueCurve curve_from(const std::vector<double>& t, const std::vector<double>& v) {
  ValueCurve c;
  c.strategy_id = "manual";
  for (std::size_t i = 0; i < t.size(); ++i) {
    ValuePoint pt;
    pt.t = t[i];
    pt.comprehensive_value = v[i];
    pt.object_value = v[i];
    c.grid.push_back(pt);
  }
  return c;
}

}  // namespace timewise::testing
