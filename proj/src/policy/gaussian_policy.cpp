#include "racer/policy/gaussian_policy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace racer::policy {

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln(sqrt(2 pi))

PolicyOutput heads_from_trunk(const Eigen::Ref<const Eigen::VectorXd>& trunk) {
  PolicyOutput out;
  for (std::size_t i = 0; i < kActionDim; ++i) {
    out.mu[i] = std::tanh(trunk[i]);
    out.sigma[i] = nn::activate(nn::Activation::Softplus, trunk[kActionDim + i]);
  }
  return out;
}

}  // namespace

nn::MlpParams make_actor(std::uint64_t seed, int hidden_units) {
  const std::array<int, 3> sizes{static_cast<int>(kObservationDim), hidden_units,
                                 static_cast<int>(2 * kActionDim)};
  const std::array<nn::Activation, 2> acts{nn::Activation::Tanh, nn::Activation::Identity};
  return nn::init_mlp(sizes, acts, seed);
}

Eigen::MatrixXd observation_matrix(std::span<const Observation> observations) {
  Eigen::MatrixXd m(kObservationDim, static_cast<Eigen::Index>(observations.size()));
  for (std::size_t c = 0; c < observations.size(); ++c) {
    const auto flat = observations[c].flatten();
    for (std::size_t r = 0; r < kObservationDim; ++r) m(r, c) = flat[r];
  }
  return m;
}

PolicyOutput policy_forward(const nn::MlpParams& actor, const Observation& obs) {
  const auto flat = obs.flatten();
  const Eigen::VectorXd input = Eigen::Map<const Eigen::VectorXd>(flat.data(), kObservationDim);
  return heads_from_trunk(nn::forward(actor, input));
}

ActionSample sample_action(const PolicyOutput& out, std::mt19937_64& rng) {
  std::normal_distribution<double> standard(0.0, 1.0);
  ActionSample sample;
  for (std::size_t i = 0; i < kActionDim; ++i) {
    sample.action[i] = out.mu[i] + out.sigma[i] * standard(rng);
  }
  sample.log_prob = log_prob(out, sample.action);
  return sample;
}

double log_prob(const PolicyOutput& out, const Action& action) {
  double total = 0.0;
  for (std::size_t i = 0; i < kActionDim; ++i) {
    const double z = (action[i] - out.mu[i]) / out.sigma[i];
    total += -std::log(out.sigma[i]) - kLogSqrtTwoPi - 0.5 * z * z;
  }
  return total;
}

double entropy(const PolicyOutput& out) {
  double total = 0.0;
  for (std::size_t i = 0; i < kActionDim; ++i) {
    total += 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * out.sigma[i] * out.sigma[i]);
  }
  return total;
}

DistributionGrad log_prob_grad(const PolicyOutput& out, const Action& action) {
  DistributionGrad g;
  for (std::size_t i = 0; i < kActionDim; ++i) {
    const double diff = action[i] - out.mu[i];
    const double var = out.sigma[i] * out.sigma[i];
    g.d_mu[i] = diff / var;
    g.d_sigma[i] = -1.0 / out.sigma[i] + diff * diff / (var * out.sigma[i]);
  }
  return g;
}

DistributionGrad entropy_grad(const PolicyOutput& out) {
  DistributionGrad g;
  for (std::size_t i = 0; i < kActionDim; ++i) g.d_sigma[i] = 1.0 / out.sigma[i];
  return g;
}

PolicyBatch policy_forward_batch(const nn::MlpParams& actor, const Eigen::MatrixXd& observations) {
  PolicyBatch batch;
  batch.trace = nn::forward_trace(actor, observations);
  const Eigen::MatrixXd& trunk = batch.trace.output();
  batch.outputs.reserve(trunk.cols());
  for (Eigen::Index c = 0; c < trunk.cols(); ++c) batch.outputs.push_back(heads_from_trunk(trunk.col(c)));
  return batch;
}

nn::GradientBundle policy_backward(const nn::MlpParams& actor, const PolicyBatch& batch,
                                   std::span<const DistributionGrad> head_grads) {
  const Eigen::MatrixXd& trunk = batch.trace.output();
  if (static_cast<Eigen::Index>(head_grads.size()) != trunk.cols()) {
    throw std::invalid_argument("policy_backward: one head gradient per sample required");
  }
  Eigen::MatrixXd d_trunk(trunk.rows(), trunk.cols());
  for (Eigen::Index c = 0; c < trunk.cols(); ++c) {
    const PolicyOutput& out = batch.outputs[c];
    for (std::size_t i = 0; i < kActionDim; ++i) {
      d_trunk(i, c) = head_grads[c].d_mu[i] * (1.0 - out.mu[i] * out.mu[i]);
      const double pre_sigma = trunk(kActionDim + i, c);
      d_trunk(kActionDim + i, c) = head_grads[c].d_sigma[i] / (1.0 + std::exp(-pre_sigma));
    }
  }
  return nn::backward_batch(actor, batch.trace, d_trunk);
}

}  // namespace racer::policy
