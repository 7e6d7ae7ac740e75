#include "timewise/control.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "timewise/errors.hpp"

namespace timewise {

ValueCurve value_curve(const PrecisionProfile& profile, const ValueContext& ctx, double horizon, std::size_t grid_n) {
  if (!(horizon > 0.0)) throw ContractViolation("value curve horizon must be positive");
  if (grid_n < 2) throw ContractViolation("value curve needs at least two grid points");
  ValueCurve curve;
  curve.strategy_id = profile.strategy_id;
  curve.grid.reserve(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    ValuePoint pt;
    pt.t = horizon * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    pt.precision = eval_profile(profile, pt.t);
    pt.object_value = modeled_object_value(ctx, 1.0 - pt.precision);
    pt.discount = discount(ctx.discount, pt.t);
    pt.comprehensive_value = comprehensive_value(pt.object_value, pt.discount);
    curve.grid.push_back(pt);
  }
  return curve;
}

Peak peak(const ValueCurve& curve) {
  if (curve.grid.empty()) throw ContractViolation("peak of an empty curve");
  Peak best{curve.grid[0].t, curve.grid[0].comprehensive_value, 0};
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    if (curve.grid[i].comprehensive_value > best.v_c_max) {
      best = {curve.grid[i].t, curve.grid[i].comprehensive_value, i};
    }
  }
  return best;
}

MetaDecision select_strategy(std::span<const PrecisionProfile> catalog, const ValueContext& ctx, double horizon,
                             std::size_t grid_n, std::optional<double> complete_seconds) {
  if (catalog.empty()) throw ContractViolation("strategy catalog is empty");
  const auto start = std::chrono::steady_clock::now();

  MetaDecision decision;
  std::optional<Peak> best;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    decision.curves.push_back(value_curve(catalog[k], ctx, horizon, grid_n));
    const Peak p = peak(decision.curves.back());
    const bool better = !best || p.v_c_max > best->v_c_max ||
                        (p.v_c_max == best->v_c_max &&
                         (p.t_max < best->t_max ||
                          (p.t_max == best->t_max && catalog[k].strategy_id < catalog[best_index].strategy_id)));
    if (better) {
      best = p;
      best_index = k;
    }
  }

  decision.selected = catalog[best_index].strategy_id;
  decision.t_max = best->t_max;
  decision.v_c_max = best->v_c_max;
  decision.steps_per_second = catalog[best_index].steps_per_second;
  const double rc = complete_seconds.value_or(horizon);
  if (!(rc > 0.0)) throw ContractViolation("complete resources must be positive");
  decision.ledger = ResourceLedger{rc, 0.0}.with_allocated(decision.t_max);
  decision.metalevel_overhead_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return decision;
}

namespace {

template <typename Pred>
std::vector<GridInterval> runs(const ValueCurve& curve, Pred step_belongs) {
  std::vector<GridInterval> out;
  const auto& g = curve.grid;
  std::size_t i = 0;
  while (i + 1 < g.size()) {
    if (!step_belongs(g[i].comprehensive_value, g[i + 1].comprehensive_value)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j + 1 < g.size() && step_belongs(g[j].comprehensive_value, g[j + 1].comprehensive_value)) ++j;
    out.push_back({i, j, g[i].t, g[j].t});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<GridInterval> dominance_intervals(const ValueCurve& curve) {
  if (curve.grid.empty()) throw ContractViolation("dominance_intervals of an empty curve");
  return runs(curve, [](double a, double b) { return b > a; });
}

std::vector<GridInterval> non_increasing_segments(const ValueCurve& curve) {
  if (curve.grid.empty()) throw ContractViolation("non_increasing_segments of an empty curve");
  return runs(curve, [](double a, double b) { return !(b > a); });
}

DiscontinuityBound check_bounded_discontinuity(const ValueCurve& curve, const ResourceLedger& ledger, double delta) {
  if (!(delta > 0.0)) throw ContractViolation("discontinuity window must be positive");
  if (!(ledger.complete_seconds > 0.0)) throw ContractViolation("ledger needs positive complete resources");
  DiscontinuityBound bound{delta, 0.0};
  const auto& g = curve.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ri = g[i].t / ledger.complete_seconds;
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double rj = g[j].t / ledger.complete_seconds;
      if (std::abs(rj - ri) > delta) break;
      bound.epsilon = std::max(bound.epsilon, std::abs(g[j].comprehensive_value - g[i].comprehensive_value));
    }
  }
  return bound;
}

EndpointReport check_endpoint_convergence(const std::function<AnytimeState()>& factory, const Network& net,
                                          const Evidence& ev, const Query& q, double tolerance,
                                          std::uint64_t max_steps) {
  EndpointReport report;
  report.exact = variable_elimination(net, ev, q).probability;
  AnytimeState state = factory();
  // Finite engines finish well inside the cap; the sampler consumes all of it.
  while (!state.completed() && state.steps_taken() < max_steps) {
    const std::uint64_t before = state.steps_taken();
    state.advance(std::min<std::uint64_t>(max_steps - before, 4096));
    if (state.steps_taken() == before) break;
  }
  report.statistical = !state.completed();
  report.steps = state.steps_taken();
  report.final_mean = state.estimate().mean;
  report.converged = std::abs(report.final_mean - report.exact) <= tolerance;
  return report;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kReachedTMax: return "reached-t-max";
    case StopReason::kValueDeclining: return "value-declining";
    case StopReason::kEngineCompleted: return "engine-completed";
  }
  return "unknown";
}

MonitoredRun execute_with_monitoring(const MetaDecision& decision, AnytimeState state, const ValueContext& ctx,
                                     std::uint64_t check_every) {
  if (state.strategy_id() != decision.selected) {
    throw ContractViolation("engine '" + state.strategy_id() + "' does not match selected strategy '" +
                            decision.selected + "'");
  }
  if (check_every == 0) throw ContractViolation("check_every must be positive");
  if (!(decision.steps_per_second > 0.0)) throw ContractViolation("decision needs a positive step rate");

  const auto budget = static_cast<std::uint64_t>(std::llround(decision.t_max * decision.steps_per_second));
  MonitoredRun run;
  auto record = [&] {
    MonitorCheckpoint cp;
    cp.steps = state.steps_taken();
    cp.t = static_cast<double>(cp.steps) / decision.steps_per_second;
    cp.precision = state.estimate().precision();
    cp.object_value = modeled_object_value(ctx, std::clamp(1.0 - cp.precision, 0.0, 1.0));
    cp.discount = discount(ctx.discount, cp.t);
    cp.comprehensive_value = comprehensive_value(cp.object_value, cp.discount);
    run.log.checkpoints.push_back(cp);
  };
  auto declining = [&run] {
    const auto& c = run.log.checkpoints;
    const std::size_t n = c.size();
    return n >= 3 && c[n - 1].comprehensive_value < c[n - 2].comprehensive_value &&
           c[n - 2].comprehensive_value < c[n - 3].comprehensive_value;
  };

  if (budget <= state.steps_taken()) {
    record();
    run.log.reason = state.completed() ? StopReason::kEngineCompleted : StopReason::kReachedTMax;
  }
  while (state.steps_taken() < budget) {
    const std::uint64_t before = state.steps_taken();
    state.advance(std::min(check_every, budget - before));
    record();
    if (declining()) {
      run.log.reason = StopReason::kValueDeclining;
      break;
    }
    if (state.completed() || state.steps_taken() == before) {
      run.log.reason = StopReason::kEngineCompleted;
      break;
    }
    if (state.steps_taken() >= budget) run.log.reason = StopReason::kReachedTMax;
  }
  run.estimate = state.estimate();
  return run;
}

}  // namespace timewise
