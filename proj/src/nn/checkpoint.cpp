#include "racer/nn/checkpoint.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace racer::nn {

const char* activation_name(Activation act) {
  switch (act) {
    case Activation::Tanh:
      return "tanh";
    case Activation::Identity:
      return "identity";
    case Activation::Softplus:
      return "softplus";
  }
  return "identity";
}

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "identity") return Activation::Identity;
  if (name == "softplus") return Activation::Softplus;
  throw std::invalid_argument("unknown activation '" + name + "'");
}

void save_mlp(std::ostream& out, const MlpParams& params) {
  out << "racer-mlp 1\nsizes";
  for (int s : params.layer_sizes()) out << ' ' << s;
  out << "\nactivations";
  for (const Layer& l : params.layers) out << ' ' << activation_name(l.activation);
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const Layer& l = params.layers[k];
    out << "layer " << k;
    for (Eigen::Index i = 0; i < l.weights.size(); ++i) out << ' ' << l.weights.data()[i];
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) out << ' ' << l.bias[i];
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

std::istringstream expect_line(std::istream& in, const std::string& keyword) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_mlp: missing '" + keyword + "' line");
  std::istringstream fields(line);
  std::string head;
  fields >> head;
  if (head != keyword) throw std::runtime_error("load_mlp: expected '" + keyword + "', got '" + head + "'");
  return fields;
}

}  // namespace

MlpParams load_mlp(std::istream& in) {
  {
    auto fields = expect_line(in, "racer-mlp");
    int version = 0;
    if (!(fields >> version) || version != 1) throw std::runtime_error("load_mlp: unsupported version");
  }
  std::vector<int> sizes;
  {
    auto fields = expect_line(in, "sizes");
    for (int s; fields >> s;) sizes.push_back(s);
  }
  std::vector<Activation> activations;
  {
    auto fields = expect_line(in, "activations");
    for (std::string name; fields >> name;) activations.push_back(parse_activation(name));
  }
  MlpParams params = init_mlp(sizes, activations, 0);
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    auto fields = expect_line(in, "layer");
    std::size_t index = 0;
    fields >> index;
    if (index != k) throw std::runtime_error("load_mlp: layers out of order");
    Layer& l = params.layers[k];
    for (Eigen::Index i = 0; i < l.weights.size(); ++i) {
      if (!(fields >> l.weights.data()[i])) throw std::runtime_error("load_mlp: truncated weights");
    }
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) {
      if (!(fields >> l.bias[i])) throw std::runtime_error("load_mlp: truncated bias");
    }
  }
  return params;
}

}  // namespace racer::nn
