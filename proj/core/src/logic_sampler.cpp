#include <algorithm>
#include <cmath>

#include "timewise/engines.hpp"
#include "timewise/random.hpp"

namespace timewise {

namespace {

class LogicSampler final : public AnytimeEngine {
 public:
  LogicSampler(std::shared_ptr<const Network> net, Observations obs, ResolvedQuery query, std::uint64_t seed)
      : net_(std::move(net)), obs_(std::move(obs)), query_(query), seed_(seed), rng_(seed), sample_(net_->size(), 0) {}

  std::unique_ptr<AnytimeEngine> clone() const override { return std::make_unique<LogicSampler>(*this); }
  std::string_view kind() const override { return "sample"; }
  std::string_view step_unit() const override { return "one weighted forward sample"; }
  bool completed() const override { return false; }
  std::uint64_t steps_taken() const override { return steps_; }
  std::uint64_t seed() const override { return seed_; }

  void advance(std::uint64_t steps) override {
    for (std::uint64_t k = 0; k < steps; ++k) draw();
  }

  Estimate estimate() const override {
    Estimate est;
    est.support = steps_;
    est.well_founded = true;
    if (!(weight_ > 0.0)) return est;
    const double mean = target_weight_ / weight_;
    const double ess = weight_ * weight_ / weight_sq_;
    const double half = kSamplerZ * std::sqrt(mean * (1.0 - mean) / ess);
    est.mean = mean;
    est.low = std::clamp(mean - half, 0.0, 1.0);
    est.high = std::clamp(mean + half, 0.0, 1.0);
    return est;
  }

 private:
  void draw() {
    double w = 1.0;
    for (std::size_t node : net_->topo_order()) {
      const auto row = net_->row(node, sample_);
      if (obs_[node]) {
        sample_[node] = *obs_[node];
        w *= row[*obs_[node]];
        continue;
      }
      double u = rng_.uniform();
      std::size_t s = 0;
      while (s + 1 < row.size() && u >= row[s]) u -= row[s++];
      sample_[node] = s;
    }
    ++steps_;
    weight_ += w;
    weight_sq_ += w * w;
    if (sample_[query_.node] == query_.state) target_weight_ += w;
  }

  std::shared_ptr<const Network> net_;
  Observations obs_;
  ResolvedQuery query_;
  std::uint64_t seed_;
  Rng rng_;
  std::vector<std::size_t> sample_;
  std::uint64_t steps_ = 0;
  double weight_ = 0.0;
  double weight_sq_ = 0.0;
  double target_weight_ = 0.0;
};

}  // namespace

AnytimeState make_logic_sampler(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q,
                                std::uint64_t seed) {
  auto obs = resolve(*net, ev);
  const auto rq = resolve(*net, q, obs);
  return AnytimeState(std::make_unique<LogicSampler>(std::move(net), std::move(obs), rq, seed));
}

}  // namespace timewise
