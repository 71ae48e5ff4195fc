#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace racer::nn {

enum class Activation { Tanh, Identity, Softplus };

struct Layer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
  Activation activation = Activation::Identity;
};

// First/second moment estimates with the same shapes as the parameters.
struct AdamState {
  std::vector<Eigen::MatrixXd> m_weights, v_weights;
  std::vector<Eigen::VectorXd> m_bias, v_bias;
  std::int64_t step = 0;
};

struct MlpParams {
  std::vector<Layer> layers;
  AdamState adam;

  Eigen::Index input_dim() const { return layers.front().weights.cols(); }
  Eigen::Index output_dim() const { return layers.back().weights.rows(); }
  std::vector<int> layer_sizes() const;
  std::size_t parameter_count() const;

  // Flat view in layer order: weights (column-major) then bias, per layer.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);
};

// d(objective)/d(parameter), shape-matched to an MlpParams.
struct GradientBundle {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;

  static GradientBundle zeros_like(const MlpParams& params);

  GradientBundle& operator+=(const GradientBundle& other);
  GradientBundle& operator*=(double scale);

  std::vector<double> flatten() const;
  bool all_finite() const;
  double norm() const;
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), zero bias, zeroed Adam state.
// `activations[k]` applies to the output of layer k, so there is one fewer
// activation than layer sizes. Throws std::invalid_argument on mismatch.
MlpParams init_mlp(std::span<const int> layer_sizes, std::span<const Activation> activations,
                   std::uint64_t seed);

// Per-layer pre-activations and outputs for a batch (one column per sample).
struct ForwardTrace {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> pre;
  std::vector<Eigen::MatrixXd> post;

  const Eigen::MatrixXd& output() const { return post.back(); }
};

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input);
Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs);
ForwardTrace forward_trace(const MlpParams& params, const Eigen::MatrixXd& inputs);

// Gradient of <output, output_grad> with respect to every parameter.
GradientBundle backward(const MlpParams& params, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad);

// Batched form: sums the per-column gradients. `output_grads` has the shape
// of trace.output().
GradientBundle backward_batch(const MlpParams& params, const ForwardTrace& trace,
                              const Eigen::MatrixXd& output_grads);

// One bias-corrected Adam descent step. Callers maximizing an objective pass
// the negated gradient.
void adam_step(MlpParams& params, const GradientBundle& grads, const AdamConfig& config);

double activate(Activation act, double x);
double activation_derivative(Activation act, double pre, double post);

}  // namespace racer::nn
