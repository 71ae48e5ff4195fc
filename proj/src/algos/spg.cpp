#include "racer/algos/spg.hpp"

#include <stdexcept>

namespace racer::algos {

std::vector<Action> spg_candidates(const Action& taken, double temperature, int n_samples,
                                   std::mt19937_64& rng) {
  if (temperature < 0.0) throw std::invalid_argument("spg_candidates: negative temperature");
  if (n_samples < 0) throw std::invalid_argument("spg_candidates: negative sample count");
  std::normal_distribution<double> standard(0.0, 1.0);
  std::vector<Action> candidates;
  candidates.reserve(static_cast<std::size_t>(n_samples) + 1);
  candidates.push_back(clamp_action(taken));
  for (int s = 0; s < n_samples; ++s) {
    Action a = taken;
    for (double& component : a) component += temperature * standard(rng);
    candidates.push_back(clamp_action(a));
  }
  return candidates;
}

namespace {

SpgTarget argmax_column_block(const Eigen::MatrixXd& q, Eigen::Index first,
                              std::span<const Action> candidates) {
  SpgTarget best{candidates[0], q(0, first), q(0, first)};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double value = q(0, first + static_cast<Eigen::Index>(k));
    if (value > best.q_target) {
      best.q_target = value;
      best.target = candidates[k];
    }
  }
  return best;
}

}  // namespace

SpgTarget select_target(const nn::MlpParams& critic_q, const Observation& obs,
                        std::span<const Action> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_target: no candidates");
  Eigen::MatrixXd inputs(kObservationDim + kActionDim, static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    inputs.col(static_cast<Eigen::Index>(k)) = state_action_input(obs, candidates[k]);
  }
  return argmax_column_block(nn::forward_batch(critic_q, inputs), 0, candidates);
}

SpgTarget spg_sample_targets(const nn::MlpParams& critic_q, const Observation& obs,
                             const Action& taken, double temperature, int n_samples,
                             std::mt19937_64& rng) {
  const auto candidates = spg_candidates(taken, temperature, n_samples, rng);
  return select_target(critic_q, obs, candidates);
}

std::vector<SpgTarget> spg_sample_targets_batch(const nn::MlpParams& critic_q,
                                                std::span<const Transition> batch,
                                                double temperature, int n_samples,
                                                std::mt19937_64& rng) {
  const Eigen::Index per = n_samples + 1;
  std::vector<std::vector<Action>> candidates;
  candidates.reserve(batch.size());
  Eigen::MatrixXd inputs(kObservationDim + kActionDim, per * static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    candidates.push_back(spg_candidates(batch[i].action, temperature, n_samples, rng));
    for (Eigen::Index k = 0; k < per; ++k) {
      inputs.col(static_cast<Eigen::Index>(i) * per + k) = state_action_input(batch[i].obs, candidates[i][k]);
    }
  }
  const Eigen::MatrixXd q = nn::forward_batch(critic_q, inputs);
  std::vector<SpgTarget> targets;
  targets.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    targets.push_back(argmax_column_block(q, static_cast<Eigen::Index>(i) * per, candidates[i]));
  }
  return targets;
}

Objective spg_batch_objective(const nn::MlpParams& actor, std::span<const SpgSample> samples,
                              double beta) {
  if (samples.empty()) throw std::invalid_argument("spg_batch_objective: empty batch");
  std::vector<Observation> obs;
  obs.reserve(samples.size());
  for (const SpgSample& s : samples) obs.push_back(s.obs);
  const policy::PolicyBatch batch = policy::policy_forward_batch(actor, policy::observation_matrix(obs));

  const double inv_n = 1.0 / static_cast<double>(samples.size());
  std::vector<policy::DistributionGrad> head_grads(samples.size());
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const policy::PolicyOutput& out = batch.outputs[i];
    const double w = samples[i].weight;
    total += w * policy::log_prob(out, samples[i].target) + beta * policy::entropy(out);
    const policy::DistributionGrad g_lp = policy::log_prob_grad(out, samples[i].target);
    const policy::DistributionGrad g_h = policy::entropy_grad(out);
    for (std::size_t k = 0; k < kActionDim; ++k) {
      head_grads[i].d_mu[k] = inv_n * w * g_lp.d_mu[k];
      head_grads[i].d_sigma[k] = inv_n * (w * g_lp.d_sigma[k] + beta * g_h.d_sigma[k]);
    }
  }
  return {total * inv_n, policy::policy_backward(actor, batch, head_grads)};
}

UpdateReport spg_actor_update(nn::MlpParams& actor, const nn::MlpParams& critic_q,
                              std::span<const Transition> source, int epochs,
                              const SpgConfig& config, double temperature, std::mt19937_64& rng) {
  UpdateReport report;
  const nn::AdamConfig adam{.learning_rate = config.actor_lr};
  std::vector<SpgSample> samples(config.minibatch);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto batch = replay::sample_minibatch(source, config.minibatch, rng);
    const auto targets = spg_sample_targets_batch(critic_q, batch, temperature, config.n_samples, rng);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      samples[i] = {batch[i].obs, targets[i].target, config.prioritized ? targets[i].advantage() : 1.0};
    }
    Objective objective = spg_batch_objective(actor, samples, config.beta);
    require_finite(objective, "SPG actor update");
    report.objectives.push_back(objective.value);
    report.gradient_norms.push_back(objective.gradient.norm());
    objective.gradient *= -1.0;
    nn::adam_step(actor, objective.gradient, adam);
  }
  return report;
}

double decay_temperature(double temperature, double decay) {
  if (temperature < 0.0) throw std::invalid_argument("decay_temperature: negative temperature");
  return temperature * (1.0 - decay);
}

}  // namespace racer::algos
