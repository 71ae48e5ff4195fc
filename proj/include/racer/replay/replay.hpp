#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "racer/returns/returns.hpp"

namespace racer::replay {

using returns::Transition;

// Fixed-capacity FIFO store. Once full, every insertion overwrites the
// oldest transition.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& transition);
  void push_episode(std::span<const Transition> transitions);

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }
  std::uint64_t insertions() const { return insertions_; }

  // i = 0 is the oldest stored transition.
  const Transition& oldest_first(std::size_t i) const;

  // Unordered view of everything stored; sufficient for uniform sampling.
  std::span<const Transition> contents() const { return storage_; }

 private:
  std::size_t capacity_;
  std::vector<Transition> storage_;
  std::size_t next_slot_ = 0;
  std::uint64_t insertions_ = 0;
};

// n uniform draws with replacement. Throws std::invalid_argument on an
// empty source.
std::vector<Transition> sample_minibatch(std::span<const Transition> source, std::size_t n,
                                         std::mt19937_64& rng);

enum class Regime { Recent, Memory, Both };
enum class SourceKind { Recent, Buffer };

struct SchedulePhase {
  SourceKind source;
  int epochs;

  friend bool operator==(const SchedulePhase&, const SchedulePhase&) = default;
};

// Recent -> [(recent, n)], Memory -> [(buffer, n)],
// Both -> [(buffer, ceil(n/2)), (recent, floor(n/2))], empty phases dropped.
std::vector<SchedulePhase> epoch_schedule(Regime regime, int total_epochs);

std::string_view regime_name(Regime regime);
Regime parse_regime(std::string_view name);

}  // namespace racer::replay
