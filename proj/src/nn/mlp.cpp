#include "racer/nn/mlp.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace racer::nn {

double activate(Activation act, double x) {
  switch (act) {
    case Activation::Tanh:
      return std::tanh(x);
    case Activation::Identity:
      return x;
    case Activation::Softplus:
      return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  }
  return x;
}

double activation_derivative(Activation act, double pre, double post) {
  switch (act) {
    case Activation::Tanh:
      return 1.0 - post * post;
    case Activation::Identity:
      return 1.0;
    case Activation::Softplus:
      return 1.0 / (1.0 + std::exp(-pre));
  }
  return 1.0;
}

std::vector<int> MlpParams::layer_sizes() const {
  std::vector<int> sizes;
  if (layers.empty()) return sizes;
  sizes.push_back(static_cast<int>(layers.front().weights.cols()));
  for (const Layer& l : layers) sizes.push_back(static_cast<int>(l.weights.rows()));
  return sizes;
}

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

std::vector<double> MlpParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const Layer& l : layers) {
    flat.insert(flat.end(), l.weights.data(), l.weights.data() + l.weights.size());
    flat.insert(flat.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return flat;
}

void MlpParams::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw std::invalid_argument("MlpParams::assign: expected " + std::to_string(parameter_count()) +
                                " values, got " + std::to_string(flat.size()));
  }
  std::size_t offset = 0;
  for (Layer& l : layers) {
    std::copy_n(flat.begin() + offset, l.weights.size(), l.weights.data());
    offset += l.weights.size();
    std::copy_n(flat.begin() + offset, l.bias.size(), l.bias.data());
    offset += l.bias.size();
  }
}

GradientBundle GradientBundle::zeros_like(const MlpParams& params) {
  GradientBundle g;
  for (const Layer& l : params.layers) {
    g.weights.push_back(Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
  }
  return g;
}

GradientBundle& GradientBundle::operator+=(const GradientBundle& other) {
  if (other.weights.size() != weights.size()) {
    throw std::invalid_argument("GradientBundle: layer count mismatch");
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] += other.weights[k];
    bias[k] += other.bias[k];
  }
  return *this;
}

GradientBundle& GradientBundle::operator*=(double scale) {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] *= scale;
    bias[k] *= scale;
  }
  return *this;
}

std::vector<double> GradientBundle::flatten() const {
  std::vector<double> flat;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    flat.insert(flat.end(), weights[k].data(), weights[k].data() + weights[k].size());
    flat.insert(flat.end(), bias[k].data(), bias[k].data() + bias[k].size());
  }
  return flat;
}

bool GradientBundle::all_finite() const {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!weights[k].allFinite() || !bias[k].allFinite()) return false;
  }
  return true;
}

double GradientBundle::norm() const {
  double sq = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    sq += weights[k].squaredNorm() + bias[k].squaredNorm();
  }
  return std::sqrt(sq);
}

MlpParams init_mlp(std::span<const int> layer_sizes, std::span<const Activation> activations,
                   std::uint64_t seed) {
  if (layer_sizes.size() < 2) throw std::invalid_argument("init_mlp: need at least 2 layer sizes");
  if (activations.size() + 1 != layer_sizes.size()) {
    throw std::invalid_argument("init_mlp: expected " + std::to_string(layer_sizes.size() - 1) +
                                " activations, got " + std::to_string(activations.size()));
  }
  for (int s : layer_sizes) {
    if (s <= 0) throw std::invalid_argument("init_mlp: layer sizes must be positive");
  }

  std::mt19937_64 rng(seed);
  MlpParams params;
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    const int fan_in = layer_sizes[k];
    const int fan_out = layer_sizes[k + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);

    Layer layer;
    layer.weights.resize(fan_out, fan_in);
    for (Eigen::Index c = 0; c < fan_in; ++c) {
      for (Eigen::Index r = 0; r < fan_out; ++r) layer.weights(r, c) = dist(rng);
    }
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    layer.activation = activations[k];
    params.layers.push_back(std::move(layer));

    params.adam.m_weights.push_back(Eigen::MatrixXd::Zero(fan_out, fan_in));
    params.adam.v_weights.push_back(Eigen::MatrixXd::Zero(fan_out, fan_in));
    params.adam.m_bias.push_back(Eigen::VectorXd::Zero(fan_out));
    params.adam.v_bias.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return params;
}

namespace {

void check_input(const MlpParams& params, Eigen::Index rows) {
  if (params.layers.empty()) throw std::invalid_argument("MLP has no layers");
  if (rows != params.input_dim()) {
    throw std::invalid_argument("MLP input dimension " + std::to_string(rows) + " != " +
                                std::to_string(params.input_dim()));
  }
}

Eigen::MatrixXd apply_activation(Activation act, const Eigen::MatrixXd& pre) {
  if (act == Activation::Identity) return pre;
  if (act == Activation::Tanh) return pre.array().tanh().matrix();
  return pre.unaryExpr([act](double x) { return activate(act, x); });
}

}  // namespace

ForwardTrace forward_trace(const MlpParams& params, const Eigen::MatrixXd& inputs) {
  check_input(params, inputs.rows());
  ForwardTrace trace;
  trace.input = inputs;
  trace.pre.reserve(params.layers.size());
  trace.post.reserve(params.layers.size());
  const Eigen::MatrixXd* current = &trace.input;
  for (const Layer& layer : params.layers) {
    Eigen::MatrixXd pre = layer.weights * *current;
    pre.colwise() += layer.bias;
    trace.post.push_back(apply_activation(layer.activation, pre));
    trace.pre.push_back(std::move(pre));
    current = &trace.post.back();
  }
  return trace;
}

Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs) {
  check_input(params, inputs.rows());
  Eigen::MatrixXd current = inputs;
  for (const Layer& layer : params.layers) {
    Eigen::MatrixXd pre = layer.weights * current;
    pre.colwise() += layer.bias;
    current = apply_activation(layer.activation, pre);
  }
  return current;
}

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input) {
  return forward_batch(params, input);
}

GradientBundle backward_batch(const MlpParams& params, const ForwardTrace& trace,
                              const Eigen::MatrixXd& output_grads) {
  const std::size_t n_layers = params.layers.size();
  if (trace.post.size() != n_layers) throw std::invalid_argument("backward: trace/params mismatch");
  if (output_grads.rows() != trace.output().rows() || output_grads.cols() != trace.output().cols()) {
    throw std::invalid_argument("backward: output gradient shape mismatch");
  }

  GradientBundle grads;
  grads.weights.resize(n_layers);
  grads.bias.resize(n_layers);

  Eigen::MatrixXd delta = output_grads;  // d/d(post) of the current layer
  for (std::size_t k = n_layers; k-- > 0;) {
    const Layer& layer = params.layers[k];
    switch (layer.activation) {
      case Activation::Identity:
        break;
      case Activation::Tanh:
        delta.array() *= 1.0 - trace.post[k].array().square();
        break;
      case Activation::Softplus:
        delta.array() *= 1.0 / (1.0 + (-trace.pre[k].array()).exp());
        break;
    }
    const Eigen::MatrixXd& layer_input = k == 0 ? trace.input : trace.post[k - 1];
    grads.weights[k].noalias() = delta * layer_input.transpose();
    grads.bias[k] = delta.rowwise().sum();
    if (k > 0) delta = layer.weights.transpose() * delta;
  }
  return grads;
}

GradientBundle backward(const MlpParams& params, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad) {
  return backward_batch(params, forward_trace(params, input), output_grad);
}

void adam_step(MlpParams& params, const GradientBundle& grads, const AdamConfig& config) {
  if (grads.weights.size() != params.layers.size()) {
    throw std::invalid_argument("adam_step: gradient/parameter layer mismatch");
  }
  AdamState& s = params.adam;
  s.step += 1;
  const double t = static_cast<double>(s.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);

  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g.cwiseProduct(g);
    param.array() -= config.learning_rate * (m.array() / correction1) /
                     ((v.array() / correction2).sqrt() + config.epsilon);
  };
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    Layer& layer = params.layers[k];
    if (grads.weights[k].rows() != layer.weights.rows() ||
        grads.weights[k].cols() != layer.weights.cols() ||
        grads.bias[k].size() != layer.bias.size()) {
      throw std::invalid_argument("adam_step: gradient shape mismatch at layer " + std::to_string(k));
    }
    update(layer.weights, s.m_weights[k], s.v_weights[k], grads.weights[k]);
    update(layer.bias, s.m_bias[k], s.v_bias[k], grads.bias[k]);
  }
}

}  // namespace racer::nn
