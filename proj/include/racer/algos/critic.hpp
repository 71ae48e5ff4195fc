#pragma once

#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

#include "racer/algos/objective.hpp"
#include "racer/replay/replay.hpp"

namespace racer::algos {

using returns::Transition;

// V(s) takes the observation; Q(s, a) takes the observation followed by the
// clamped action.
enum class CriticKind { StateValue, StateActionValue };

Eigen::Index critic_input_dim(CriticKind kind);

// [in -> hidden (tanh) -> hidden (tanh) -> 1 (identity)]
nn::MlpParams make_critic(CriticKind kind, std::uint64_t seed, int hidden_units = 100);

Eigen::MatrixXd critic_inputs(CriticKind kind, std::span<const Transition> batch);
Eigen::VectorXd state_action_input(const Observation& obs, const Action& action);

// Mean of 1/2 (target - prediction)^2 and its gradient.
Objective critic_loss(const nn::MlpParams& critic, const Eigen::MatrixXd& inputs,
                      std::span<const double> targets);

struct CriticTrainConfig {
  double learning_rate = 5e-4;
  int epochs = 50;
  std::size_t minibatch = 200;
};

// Each epoch draws one minibatch from `source` and takes one Adam step
// towards the Monte-Carlo gains.
UpdateReport critic_update(nn::MlpParams& critic, CriticKind kind, std::span<const Transition> source,
                           const CriticTrainConfig& config, std::mt19937_64& rng);

inline UpdateReport critic_update_v(nn::MlpParams& critic, std::span<const Transition> source,
                                    const CriticTrainConfig& config, std::mt19937_64& rng) {
  return critic_update(critic, CriticKind::StateValue, source, config, rng);
}

inline UpdateReport critic_update_q(nn::MlpParams& critic, std::span<const Transition> source,
                                    const CriticTrainConfig& config, std::mt19937_64& rng) {
  return critic_update(critic, CriticKind::StateActionValue, source, config, rng);
}

}  // namespace racer::algos
