#include "racer/algos/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace racer::algos {

namespace {

std::pair<double, double> clip_bounds(double epsilon, RatioSpace space) {
  if (space == RatioSpace::Linear) return {1.0 - epsilon, 1.0 + epsilon};
  return {std::log(1.0 - epsilon), std::log(1.0 + epsilon)};
}

}  // namespace

double ppo_ratio(double new_log_prob, double old_log_prob, RatioSpace space) {
  const double diff = new_log_prob - old_log_prob;
  return space == RatioSpace::Linear ? std::exp(diff) : diff;
}

double ppo_ratio(const nn::MlpParams& actor, double old_log_prob, const Observation& obs,
                 const Action& action, RatioSpace space) {
  return ppo_ratio(policy::log_prob(policy::policy_forward(actor, obs), action), old_log_prob, space);
}

double ppo_objective(double ratio, double advantage, double epsilon, double entropy, double beta,
                     RatioSpace space) {
  const auto [lo, hi] = clip_bounds(epsilon, space);
  const double clipped = std::clamp(ratio, lo, hi) * advantage;
  return std::min(clipped, ratio * advantage) + beta * entropy;
}

double clipped_surrogate_slope(double ratio, double advantage, double epsilon, RatioSpace space) {
  const auto [lo, hi] = clip_bounds(epsilon, space);
  const double clipped = std::clamp(ratio, lo, hi) * advantage;
  return ratio * advantage <= clipped ? advantage : 0.0;
}

Objective ppo_batch_objective(const nn::MlpParams& actor, std::span<const PpoSample> samples,
                              double epsilon, double beta, RatioSpace space) {
  if (samples.empty()) throw std::invalid_argument("ppo_batch_objective: empty batch");
  std::vector<Observation> obs;
  obs.reserve(samples.size());
  for (const PpoSample& s : samples) obs.push_back(s.obs);
  const policy::PolicyBatch batch = policy::policy_forward_batch(actor, policy::observation_matrix(obs));

  const double inv_n = 1.0 / static_cast<double>(samples.size());
  std::vector<policy::DistributionGrad> head_grads(samples.size());
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const policy::PolicyOutput& out = batch.outputs[i];
    const double lp = policy::log_prob(out, samples[i].action);
    const double h = policy::entropy(out);
    const double ratio = ppo_ratio(lp, samples[i].old_log_prob, space);
    total += ppo_objective(ratio, samples[i].advantage, epsilon, h, beta, space);

    const double d_ratio = clipped_surrogate_slope(ratio, samples[i].advantage, epsilon, space);
    const double d_log_prob = d_ratio * (space == RatioSpace::Linear ? ratio : 1.0);
    const policy::DistributionGrad g_lp = policy::log_prob_grad(out, samples[i].action);
    const policy::DistributionGrad g_h = policy::entropy_grad(out);
    for (std::size_t k = 0; k < kActionDim; ++k) {
      head_grads[i].d_mu[k] = inv_n * d_log_prob * g_lp.d_mu[k];
      head_grads[i].d_sigma[k] = inv_n * (d_log_prob * g_lp.d_sigma[k] + beta * g_h.d_sigma[k]);
    }
  }
  return {total * inv_n, policy::policy_backward(actor, batch, head_grads)};
}

Objective policy_gradient_objective(const nn::MlpParams& actor, std::span<const PgSample> samples) {
  if (samples.empty()) throw std::invalid_argument("policy_gradient_objective: empty batch");
  std::vector<Observation> obs;
  obs.reserve(samples.size());
  for (const PgSample& s : samples) obs.push_back(s.obs);
  const policy::PolicyBatch batch = policy::policy_forward_batch(actor, policy::observation_matrix(obs));

  const double inv_n = 1.0 / static_cast<double>(samples.size());
  std::vector<policy::DistributionGrad> head_grads(samples.size());
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const policy::PolicyOutput& out = batch.outputs[i];
    total += policy::log_prob(out, samples[i].action) * samples[i].advantage;
    const policy::DistributionGrad g = policy::log_prob_grad(out, samples[i].action);
    for (std::size_t k = 0; k < kActionDim; ++k) {
      head_grads[i].d_mu[k] = inv_n * samples[i].advantage * g.d_mu[k];
      head_grads[i].d_sigma[k] = inv_n * samples[i].advantage * g.d_sigma[k];
    }
  }
  return {total * inv_n, policy::policy_backward(actor, batch, head_grads)};
}

std::vector<PpoSample> ppo_samples(const nn::MlpParams& critic_v, std::span<const Transition> batch) {
  const Eigen::MatrixXd values = nn::forward_batch(critic_v, critic_inputs(CriticKind::StateValue, batch));
  std::vector<PpoSample> samples(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    samples[i] = {batch[i].obs, batch[i].action, batch[i].log_prob, batch[i].gain - values(0, i)};
  }
  return samples;
}

UpdateReport ppo_update(nn::MlpParams& actor, const nn::MlpParams& critic_v,
                        std::span<const Transition> source, int epochs, const PpoConfig& config,
                        std::mt19937_64& rng) {
  UpdateReport report;
  const nn::AdamConfig adam{.learning_rate = config.actor_lr};
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto batch = replay::sample_minibatch(source, config.minibatch, rng);
    const auto samples = ppo_samples(critic_v, batch);
    Objective objective = ppo_batch_objective(actor, samples, config.epsilon, config.beta, config.space);
    require_finite(objective, "PPO actor update");
    report.objectives.push_back(objective.value);
    report.gradient_norms.push_back(objective.gradient.norm());
    objective.gradient *= -1.0;
    nn::adam_step(actor, objective.gradient, adam);
  }
  return report;
}

}  // namespace racer::algos
