#pragma once

#include <random>
#include <span>
#include <vector>

#include "racer/algos/critic.hpp"
#include "racer/algos/objective.hpp"
#include "racer/policy/gaussian_policy.hpp"

namespace racer::algos {

struct SpgConfig {
  int n_samples = 5;
  double temperature = 1.0;  // initial std-dev of the candidate perturbations
  double temp_decay = 0.01;  // per-episode factor: T <- T * (1 - temp_decay)
  bool prioritized = false;  // weight targets by their Q gain over the taken action
  double beta = 0.0;
  double actor_lr = 1e-3;
  double critic_lr = 5e-4;
  int value_epochs = 50;
  int policy_epochs = 10;
  std::size_t minibatch = 200;
};

struct SpgTarget {
  Action target{};
  double q_target = 0.0;
  double q_taken = 0.0;

  // Always >= 0 because the taken action is a candidate.
  double advantage() const { return q_target - q_taken; }
};

// clamp(taken) followed by n clamped draws taken + N(0, T^2 I).
std::vector<Action> spg_candidates(const Action& taken, double temperature, int n_samples,
                                   std::mt19937_64& rng);

// Highest-Q candidate; candidates[0] must be the taken action and wins ties.
SpgTarget select_target(const nn::MlpParams& critic_q, const Observation& obs,
                        std::span<const Action> candidates);

SpgTarget spg_sample_targets(const nn::MlpParams& critic_q, const Observation& obs,
                             const Action& taken, double temperature, int n_samples,
                             std::mt19937_64& rng);

// Same draws and results as calling spg_sample_targets per transition in
// order, with one batched critic evaluation.
std::vector<SpgTarget> spg_sample_targets_batch(const nn::MlpParams& critic_q,
                                                std::span<const Transition> batch,
                                                double temperature, int n_samples,
                                                std::mt19937_64& rng);

struct SpgSample {
  Observation obs;
  Action target{};
  double weight = 1.0;
};

// Mean of weight * log pi(target|s) + beta * H with its gradient.
Objective spg_batch_objective(const nn::MlpParams& actor, std::span<const SpgSample> samples,
                              double beta);

UpdateReport spg_actor_update(nn::MlpParams& actor, const nn::MlpParams& critic_q,
                              std::span<const Transition> source, int epochs,
                              const SpgConfig& config, double temperature, std::mt19937_64& rng);

double decay_temperature(double temperature, double decay);

}  // namespace racer::algos
