#include "timewise/anytime.hpp"

#include "timewise/errors.hpp"

namespace timewise {

AnytimeState::AnytimeState(std::unique_ptr<AnytimeEngine> engine) : engine_(std::move(engine)) {
  if (!engine_) throw ContractViolation("AnytimeState needs an engine");
  strategy_id_ = std::string(engine_->kind());
}

AnytimeState::AnytimeState(std::unique_ptr<AnytimeEngine> engine, std::string strategy_id)
    : engine_(std::move(engine)), strategy_id_(std::move(strategy_id)) {
  if (!engine_) throw ContractViolation("AnytimeState needs an engine");
}

AnytimeState::AnytimeState(const AnytimeState& other)
    : engine_(other.engine_->clone()), strategy_id_(other.strategy_id_) {}

AnytimeState& AnytimeState::operator=(const AnytimeState& other) {
  if (this != &other) {
    engine_ = other.engine_->clone();
    strategy_id_ = other.strategy_id_;
  }
  return *this;
}

AnytimeState& AnytimeState::relabel(std::string strategy_id) {
  strategy_id_ = std::move(strategy_id);
  return *this;
}

AnytimeState step(AnytimeState state, std::uint64_t n) {
  state.advance(n);
  return state;
}

}  // namespace timewise
