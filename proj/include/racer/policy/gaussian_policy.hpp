#pragma once

#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

#include "racer/nn/mlp.hpp"
#include "racer/types.hpp"

namespace racer::policy {

// The actor is an MLP trunk [obs -> hidden (tanh) -> 2*kActionDim (identity)].
// The first kActionDim outputs feed the tanh mean head, the rest the
// softplus standard-deviation head.
nn::MlpParams make_actor(std::uint64_t seed, int hidden_units = 100);

struct PolicyOutput {
  Action mu{};
  Action sigma{};
};

struct ActionSample {
  Action action{};  // unclamped draw
  double log_prob = 0.0;
};

PolicyOutput policy_forward(const nn::MlpParams& actor, const Observation& obs);
ActionSample sample_action(const PolicyOutput& out, std::mt19937_64& rng);
double log_prob(const PolicyOutput& out, const Action& action);
double entropy(const PolicyOutput& out);

// Derivatives of the diagonal-Gaussian log-density and entropy with respect
// to the distribution parameters.
struct DistributionGrad {
  Action d_mu{};
  Action d_sigma{};
};
DistributionGrad log_prob_grad(const PolicyOutput& out, const Action& action);
DistributionGrad entropy_grad(const PolicyOutput& out);

Eigen::MatrixXd observation_matrix(std::span<const Observation> observations);

// Batched forward pass keeping what the backward pass needs.
struct PolicyBatch {
  nn::ForwardTrace trace;
  std::vector<PolicyOutput> outputs;
};
PolicyBatch policy_forward_batch(const nn::MlpParams& actor, const Eigen::MatrixXd& observations);

// Chains per-sample d(objective)/d(mu, sigma) through both heads and the
// trunk; the result is the sum over the batch.
nn::GradientBundle policy_backward(const nn::MlpParams& actor, const PolicyBatch& batch,
                                   std::span<const DistributionGrad> head_grads);

}  // namespace racer::policy
