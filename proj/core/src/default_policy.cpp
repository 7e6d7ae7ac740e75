#include "interval.hpp"
#include "json_util.hpp"
#include "timewise/engines.hpp"
#include "timewise/network_io.hpp"

namespace timewise {

namespace {

class DefaultPolicy final : public AnytimeEngine {
 public:
  explicit DefaultPolicy(DefaultPolicyEntry entry) : entry_(std::move(entry)) {}

  std::unique_ptr<AnytimeEngine> clone() const override { return std::make_unique<DefaultPolicy>(*this); }
  std::string_view kind() const override { return "default"; }
  std::string_view step_unit() const override { return "one table lookup"; }
  bool completed() const override { return steps_ >= entry_.availability_steps; }
  std::uint64_t steps_taken() const override { return steps_; }
  bool declares_precision() const override { return true; }

  void advance(std::uint64_t steps) override {
    const std::uint64_t left = entry_.availability_steps - std::min(steps_, entry_.availability_steps);
    steps_ += std::min(steps, left);
  }

  Estimate estimate() const override {
    Estimate est;
    est.support = steps_;
    if (!completed()) return est;
    est.mean = entry_.mean;
    std::tie(est.low, est.high) = detail::centred_interval(entry_.mean, 1.0 - entry_.precision);
    return est;
  }

  const DefaultPolicyEntry& entry() const { return entry_; }

 private:
  DefaultPolicyEntry entry_;
  std::uint64_t steps_ = 0;
};

}  // namespace

DefaultPolicyTable parse_default_policy_table(std::string_view text) {
  const auto root = detail::parse_json(text);
  if (!root.is_array()) throw ParseError("default policy table must be a JSON array");
  DefaultPolicyTable table;
  for (const auto& item : root) {
    if (!item.is_object()) throw ParseError("default policy entries must be objects");
    auto key = item.find("context_key");
    auto action = item.find("action");
    if (key == item.end() || !key->is_string()) throw ParseError("default policy entry needs a string context_key");
    if (action == item.end() || !action->is_string()) throw ParseError("default policy entry needs a string action");
    const std::string where = "default policy '" + key->get<std::string>() + "'";
    DefaultPolicyEntry entry;
    entry.action = action->get<std::string>();
    entry.precision = detail::number_at(item, "precision", where);
    auto avail = item.find("availability_steps");
    if (avail == item.end() || !avail->is_number_unsigned()) {
      throw ParseError(where + ": availability_steps must be a non-negative integer");
    }
    entry.availability_steps = avail->get<std::uint64_t>();
    if (item.contains("mean")) entry.mean = detail::number_at(item, "mean", where);
    if (!(entry.precision >= 0.0 && entry.precision <= 1.0)) throw ParseError(where + ": precision outside [0,1]");
    if (!(entry.mean >= 0.0 && entry.mean <= 1.0)) throw ParseError(where + ": mean outside [0,1]");
    if (!table.entries.emplace(key->get<std::string>(), std::move(entry)).second) {
      throw ParseError(where + ": context key listed twice");
    }
  }
  return table;
}

DefaultPolicyTable load_default_policy_table(const std::filesystem::path& path) {
  return parse_default_policy_table(read_text_file(path));
}

AnytimeState make_default_policy(const DefaultPolicyTable& table, const std::string& context_key) {
  auto it = table.entries.find(context_key);
  if (it == table.entries.end()) throw ContractViolation("no default policy for context '" + context_key + "'");
  return AnytimeState(std::make_unique<DefaultPolicy>(it->second));
}

}  // namespace timewise
