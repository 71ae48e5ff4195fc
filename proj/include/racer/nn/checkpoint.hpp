#pragma once

#include <iosfwd>

#include "racer/nn/mlp.hpp"

namespace racer::nn {

// Plain-text parameter checkpoint:
//
//   racer-mlp 1
//   sizes <n0> <n1> ... <nk>
//   activations <tag1> ... <tagk>          (tanh | identity | softplus)
//   layer <k> <values...>                  (one line per layer)
//
// Each layer line holds the weight matrix in column-major order followed by
// the bias vector, printed with round-trip precision. Adam moments are not
// stored; a loaded network starts with a fresh optimizer state.
void save_mlp(std::ostream& out, const MlpParams& params);
MlpParams load_mlp(std::istream& in);

const char* activation_name(Activation act);
Activation parse_activation(const std::string& name);

}  // namespace racer::nn
