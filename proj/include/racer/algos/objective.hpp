#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "racer/nn/mlp.hpp"

namespace racer::algos {

// A batch objective (mean over samples) and its exact parameter gradient.
struct Objective {
  double value = 0.0;
  nn::GradientBundle gradient;
};

// Per-epoch diagnostics of an update phase.
struct UpdateReport {
  std::vector<double> objectives;  // evaluated before each step
  std::vector<double> gradient_norms;
};

// Raised when a loss or gradient stops being finite; the harness turns it
// into an aborted run.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_finite(const Objective& objective, const char* where) {
  if (!std::isfinite(objective.value) || !objective.gradient.all_finite()) {
    throw NonFiniteError(std::string("non-finite objective or gradient in ") + where);
  }
}

}  // namespace racer::algos
