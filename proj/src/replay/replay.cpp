#include "racer/replay/replay.hpp"

#include <stdexcept>
#include <string>

namespace racer::replay {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  storage_.reserve(capacity_);
}

void ReplayBuffer::push(const Transition& transition) {
  if (storage_.size() < capacity_) {
    storage_.push_back(transition);
  } else {
    storage_[next_slot_] = transition;
  }
  next_slot_ = (next_slot_ + 1) % capacity_;
  ++insertions_;
}

void ReplayBuffer::push_episode(std::span<const Transition> transitions) {
  for (const Transition& t : transitions) push(t);
}

const Transition& ReplayBuffer::oldest_first(std::size_t i) const {
  if (i >= storage_.size()) throw std::out_of_range("ReplayBuffer: index out of range");
  const std::size_t start = storage_.size() < capacity_ ? 0 : next_slot_;
  return storage_[(start + i) % storage_.size()];
}

std::vector<Transition> sample_minibatch(std::span<const Transition> source, std::size_t n,
                                         std::mt19937_64& rng) {
  if (source.empty()) throw std::invalid_argument("sample_minibatch: empty source");
  std::uniform_int_distribution<std::size_t> pick(0, source.size() - 1);
  std::vector<Transition> batch;
  batch.reserve(n);
  for (std::size_t i = 0; i < n; ++i) batch.push_back(source[pick(rng)]);
  return batch;
}

std::vector<SchedulePhase> epoch_schedule(Regime regime, int total_epochs) {
  if (total_epochs < 1) throw std::invalid_argument("epoch_schedule: total_epochs must be >= 1");
  switch (regime) {
    case Regime::Recent:
      return {{SourceKind::Recent, total_epochs}};
    case Regime::Memory:
      return {{SourceKind::Buffer, total_epochs}};
    case Regime::Both: {
      std::vector<SchedulePhase> phases{{SourceKind::Buffer, (total_epochs + 1) / 2}};
      if (total_epochs / 2 > 0) phases.push_back({SourceKind::Recent, total_epochs / 2});
      return phases;
    }
  }
  return {};
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::Recent:
      return "recent";
    case Regime::Memory:
      return "memory";
    case Regime::Both:
      return "both";
  }
  return "recent";
}

Regime parse_regime(std::string_view name) {
  if (name == "recent") return Regime::Recent;
  if (name == "memory") return Regime::Memory;
  if (name == "both") return Regime::Both;
  throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

}  // namespace racer::replay
