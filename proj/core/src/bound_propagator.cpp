#include <algorithm>
#include <queue>

#include "timewise/engines.hpp"

namespace timewise {

namespace {

// Partial instantiation along the topological order. `states` is indexed by
// node; only the first `depth` nodes of the order are meaningful.
struct Frontier {
  double mass;
  std::uint64_t seq;
  std::size_t depth;
  std::vector<std::size_t> states;
};

struct HeavierFirst {
  bool operator()(const Frontier& x, const Frontier& y) const {
    if (x.mass != y.mass) return x.mass < y.mass;
    return x.seq > y.seq;
  }
};

class BoundPropagator final : public AnytimeEngine {
 public:
  BoundPropagator(std::shared_ptr<const Network> net, Observations obs, ResolvedQuery query)
      : net_(std::move(net)), obs_(std::move(obs)), query_(query) {
    queue_.push({1.0, next_seq_++, 0, std::vector<std::size_t>(net_->size(), 0)});
  }

  std::unique_ptr<AnytimeEngine> clone() const override { return std::make_unique<BoundPropagator>(*this); }
  std::string_view kind() const override { return "bounds"; }
  std::string_view step_unit() const override { return "one complete instantiation expanded"; }
  bool completed() const override { return queue_.empty(); }
  std::uint64_t steps_taken() const override { return steps_; }

  void advance(std::uint64_t steps) override {
    for (std::uint64_t k = 0; k < steps && !queue_.empty(); ++k) expand_one();
  }

  Estimate estimate() const override {
    Estimate est;
    est.support = steps_;
    est.well_founded = true;
    // After exhaustive enumeration nothing is unexplored; 1 - e would only add rounding.
    const double unexplored = completed() ? 0.0 : std::max(0.0, 1.0 - explored_);
    const double denom = hit_ + miss_ + unexplored;
    if (!(denom > 0.0)) return est;
    est.low = hit_ / denom;
    est.high = std::min(1.0, (hit_ + unexplored) / denom);
    est.mean = 0.5 * (est.low + est.high);
    return est;
  }

 private:
  // Pops frontier entries until one complete instantiation has been accounted for.
  void expand_one() {
    const auto order = net_->topo_order();
    while (!queue_.empty()) {
      Frontier top = queue_.top();
      queue_.pop();
      if (top.depth == order.size()) {
        (top.states[query_.node] == query_.state ? hit_ : miss_) += top.mass;
        explored_ += top.mass;
        ++steps_;
        return;
      }
      const std::size_t node = order[top.depth];
      const auto row = net_->row(node, top.states);
      if (obs_[node]) {
        // Sibling branches contradict the evidence; their mass is settled now.
        const std::size_t keep = *obs_[node];
        double rejected = 0.0;
        for (std::size_t s = 0; s < row.size(); ++s) {
          if (s != keep) rejected += row[s];
        }
        explored_ += top.mass * rejected;
        push_child(top, node, keep, row[keep]);
      } else {
        for (std::size_t s = 0; s < row.size(); ++s) push_child(top, node, s, row[s]);
      }
    }
  }

  void push_child(const Frontier& parent, std::size_t node, std::size_t state, double p) {
    const double mass = parent.mass * p;
    if (!(mass > 0.0)) return;
    Frontier child{mass, next_seq_++, parent.depth + 1, parent.states};
    child.states[node] = state;
    queue_.push(std::move(child));
  }

  std::shared_ptr<const Network> net_;
  Observations obs_;
  ResolvedQuery query_;
  std::priority_queue<Frontier, std::vector<Frontier>, HeavierFirst> queue_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t steps_ = 0;
  double hit_ = 0.0;
  double miss_ = 0.0;
  double explored_ = 0.0;
};

}  // namespace

AnytimeState make_bound_propagator(std::shared_ptr<const Network> net, const Evidence& ev, const Query& q) {
  auto obs = resolve(*net, ev);
  const auto rq = resolve(*net, q, obs);
  return AnytimeState(std::make_unique<BoundPropagator>(std::move(net), std::move(obs), rq));
}

}  // namespace timewise
