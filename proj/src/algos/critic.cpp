#include "racer/algos/critic.hpp"

#include <array>
#include <stdexcept>

namespace racer::algos {

Eigen::Index critic_input_dim(CriticKind kind) {
  return kind == CriticKind::StateValue ? static_cast<Eigen::Index>(kObservationDim)
                                        : static_cast<Eigen::Index>(kObservationDim + kActionDim);
}

nn::MlpParams make_critic(CriticKind kind, std::uint64_t seed, int hidden_units) {
  const std::array<int, 4> sizes{static_cast<int>(critic_input_dim(kind)), hidden_units, hidden_units, 1};
  const std::array<nn::Activation, 3> acts{nn::Activation::Tanh, nn::Activation::Tanh,
                                           nn::Activation::Identity};
  return nn::init_mlp(sizes, acts, seed);
}

Eigen::VectorXd state_action_input(const Observation& obs, const Action& action) {
  Eigen::VectorXd in(kObservationDim + kActionDim);
  const auto flat = obs.flatten();
  const Action legal = clamp_action(action);
  for (std::size_t i = 0; i < kObservationDim; ++i) in[i] = flat[i];
  for (std::size_t i = 0; i < kActionDim; ++i) in[kObservationDim + i] = legal[i];
  return in;
}

Eigen::MatrixXd critic_inputs(CriticKind kind, std::span<const Transition> batch) {
  Eigen::MatrixXd in(critic_input_dim(kind), static_cast<Eigen::Index>(batch.size()));
  for (std::size_t c = 0; c < batch.size(); ++c) {
    const auto flat = batch[c].obs.flatten();
    for (std::size_t i = 0; i < kObservationDim; ++i) in(i, c) = flat[i];
    if (kind == CriticKind::StateActionValue) {
      const Action legal = clamp_action(batch[c].action);
      for (std::size_t i = 0; i < kActionDim; ++i) in(kObservationDim + i, c) = legal[i];
    }
  }
  return in;
}

Objective critic_loss(const nn::MlpParams& critic, const Eigen::MatrixXd& inputs,
                      std::span<const double> targets) {
  if (static_cast<Eigen::Index>(targets.size()) != inputs.cols() || targets.empty()) {
    throw std::invalid_argument("critic_loss: one target per input column required");
  }
  const nn::ForwardTrace trace = nn::forward_trace(critic, inputs);
  const Eigen::MatrixXd& pred = trace.output();
  const double n = static_cast<double>(targets.size());
  Eigen::MatrixXd d_pred(1, pred.cols());
  double loss = 0.0;
  for (Eigen::Index c = 0; c < pred.cols(); ++c) {
    const double err = pred(0, c) - targets[c];
    loss += 0.5 * err * err;
    d_pred(0, c) = err / n;
  }
  return {loss / n, nn::backward_batch(critic, trace, d_pred)};
}

UpdateReport critic_update(nn::MlpParams& critic, CriticKind kind, std::span<const Transition> source,
                           const CriticTrainConfig& config, std::mt19937_64& rng) {
  UpdateReport report;
  const nn::AdamConfig adam{.learning_rate = config.learning_rate};
  std::vector<double> gains(config.minibatch);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto batch = replay::sample_minibatch(source, config.minibatch, rng);
    for (std::size_t i = 0; i < batch.size(); ++i) gains[i] = batch[i].gain;
    Objective loss = critic_loss(critic, critic_inputs(kind, batch), gains);
    require_finite(loss, "critic update");
    report.objectives.push_back(loss.value);
    report.gradient_norms.push_back(loss.gradient.norm());
    nn::adam_step(critic, loss.gradient, adam);
  }
  return report;
}

}  // namespace racer::algos
