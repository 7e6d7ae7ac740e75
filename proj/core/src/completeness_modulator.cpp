#include <algorithm>

#include "interval.hpp"
#include "timewise/engines.hpp"
#include "timewise/exact.hpp"
#include "timewise/transform.hpp"

namespace timewise {

namespace {

class CompletenessModulator final : public AnytimeEngine {
 public:
  CompletenessModulator(std::shared_ptr<const Network> net, Observations obs, ResolvedQuery query,
                        std::vector<double> ladder, std::optional<std::vector<double>> rung_precision)
      : net_(std::move(net)),
        obs_(std::move(obs)),
        query_(query),
        ladder_(std::move(ladder)),
        rung_precision_(std::move(rung_precision)) {}

  std::unique_ptr<AnytimeEngine> clone() const override { return std::make_unique<CompletenessModulator>(*this); }
  std::string_view kind() const override { return "modulate"; }
  std::string_view step_unit() const override { return "one importance rung solved exactly"; }
  bool completed() const override { return posteriors_.size() == ladder_.size(); }
  std::uint64_t steps_taken() const override { return posteriors_.size(); }

  void advance(std::uint64_t steps) override {
    for (std::uint64_t k = 0; k < steps && !completed(); ++k) {
      const double threshold = ladder_[posteriors_.size()];
      const Network pruned = prune_arcs(*net_, threshold);
      const auto d = variable_elimination_distribution(pruned, obs_, query_.node);
      posteriors_.push_back(d.probabilities[query_.state]);
    }
  }

  Estimate estimate() const override {
    Estimate est;
    est.support = posteriors_.size();
    if (posteriors_.empty()) return est;
    const std::size_t rung = posteriors_.size() - 1;
    est.mean = posteriors_.back();
    if (completed()) {
      // The last rung keeps every arc: this is the exact posterior.
      est.low = est.high = est.mean;
      est.well_founded = true;
    } else if (rung_precision_) {
      std::tie(est.low, est.high) = detail::centred_interval(est.mean, 1.0 - (*rung_precision_)[rung]);
    }
    return est;
  }

 private:
  std::shared_ptr<const Network> net_;
  Observations obs_;
  ResolvedQuery query_;
  std::vector<double> ladder_;
  std::optional<std::vector<double>> rung_precision_;
  std::vector<double> posteriors_;
};

}  // namespace

AnytimeState make_completeness_modulator(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q,
                                         std::vector<double> ladder,
                                         std::optional<std::vector<double>> rung_precision) {
  if (ladder.empty()) throw ContractViolation("importance ladder is empty");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] >= 0.0 && ladder[k] <= 1.0)) throw ContractViolation("ladder thresholds must lie in [0,1]");
    if (k > 0 && !(ladder[k] < ladder[k - 1])) throw ContractViolation("ladder must be strictly descending");
  }
  if (ladder.back() != 0.0) throw ContractViolation("final ladder rung must be 0 (full model)");
  if (rung_precision) {
    if (rung_precision->size() != ladder.size()) throw ContractViolation("one calibrated precision per rung required");
    for (double p : *rung_precision) {
      if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("calibrated precision outside [0,1]");
    }
  }
  auto obs = resolve(*net, ev);
  const auto rq = resolve(*net, q, obs);
  return AnytimeState(std::make_unique<CompletenessModulator>(std::move(net), std::move(obs), rq, std::move(ladder),
                                                              std::move(rung_precision)));
}

}  // namespace timewise
