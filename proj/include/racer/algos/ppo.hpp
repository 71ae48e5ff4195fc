#pragma once

#include <random>
#include <span>
#include <vector>

#include "racer/algos/critic.hpp"
#include "racer/algos/objective.hpp"
#include "racer/policy/gaussian_policy.hpp"

namespace racer::algos {

// Linear: ratio = pi / pi_old. Log: ratio = log pi - log pi_old, clipped to
// [log(1 - eps), log(1 + eps)].
enum class RatioSpace { Linear, Log };

struct PpoConfig {
  double epsilon = 0.2;
  double beta = 0.02;  // entropy bonus
  double actor_lr = 1e-3;
  double critic_lr = 5e-4;
  int value_epochs = 50;
  int policy_epochs = 10;
  std::size_t minibatch = 200;
  RatioSpace space = RatioSpace::Linear;
};

double ppo_ratio(double new_log_prob, double old_log_prob, RatioSpace space);
double ppo_ratio(const nn::MlpParams& actor, double old_log_prob, const Observation& obs,
                 const Action& action, RatioSpace space);

// min(clip(ratio) * A, ratio * A) + beta * H
double ppo_objective(double ratio, double advantage, double epsilon, double entropy, double beta,
                     RatioSpace space);

// d/d(ratio) of the clipped surrogate: A where the unclipped branch is the
// minimum, zero where the clipped branch is strictly smaller.
double clipped_surrogate_slope(double ratio, double advantage, double epsilon, RatioSpace space);

struct PpoSample {
  Observation obs;
  Action action{};
  double old_log_prob = 0.0;
  double advantage = 0.0;
};

// Mean clipped objective over the batch with its gradient (ascent direction).
Objective ppo_batch_objective(const nn::MlpParams& actor, std::span<const PpoSample> samples,
                              double epsilon, double beta, RatioSpace space);

// Vanilla policy gradient objective: mean of log pi(a|s) * A.
struct PgSample {
  Observation obs;
  Action action{};
  double advantage = 0.0;
};
Objective policy_gradient_objective(const nn::MlpParams& actor, std::span<const PgSample> samples);

// Advantages G - V(s) under the given state-value critic.
std::vector<PpoSample> ppo_samples(const nn::MlpParams& critic_v, std::span<const Transition> batch);

// `epochs` minibatch ascent steps on the clipped objective. Throws
// NonFiniteError if the objective or gradient blows up.
UpdateReport ppo_update(nn::MlpParams& actor, const nn::MlpParams& critic_v,
                        std::span<const Transition> source, int epochs, const PpoConfig& config,
                        std::mt19937_64& rng);

}  // namespace racer::algos
