#pragma once

#include <span>
#include <vector>

#include "racer/types.hpp"

namespace racer::returns {

// One environment step as stored for training.
struct Transition {
  Observation obs;
  Action action{};        // unclamped sample
  double reward = 0.0;
  int episode = 0;
  int step = 0;
  double gain = 0.0;      // discounted return from this step onwards
  double log_prob = 0.0;  // under the policy that sampled the action
};

// G_t = r_t + gamma * G_{t+1}, with the last step's gain equal to its reward
// (a truncated episode is treated as terminal). Throws on an empty list.
std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

// A_t = G_t - V(s_t).
std::vector<double> advantages(std::span<const double> gains, std::span<const double> values);

struct EpisodeTrace {
  std::vector<Transition> transitions;
  double gamma = 0.9;

  double total_reward() const;
  // Fills Transition::gain from the stored rewards.
  void compute_gains();
};

}  // namespace racer::returns
