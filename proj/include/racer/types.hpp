#pragma once

#include <array>
#include <cstddef>

namespace racer {

inline constexpr std::size_t kSensorCount = 5;
inline constexpr std::size_t kObservationDim = kSensorCount + 1;
inline constexpr std::size_t kActionDim = 2;

// Normalized sensor readings plus normalized speed, all in [-1, 1].
struct Observation {
  std::array<double, kSensorCount> distances{};
  double speed = -1.0;

  std::array<double, kObservationDim> flatten() const {
    std::array<double, kObservationDim> out{};
    for (std::size_t i = 0; i < kSensorCount; ++i) out[i] = distances[i];
    out[kSensorCount] = speed;
    return out;
  }

  friend bool operator==(const Observation&, const Observation&) = default;
};

// (throttle, steering). Stored raw as sampled; clamped at the environment.
using Action = std::array<double, kActionDim>;

inline Action clamp_action(const Action& a) {
  Action out{};
  for (std::size_t i = 0; i < kActionDim; ++i) {
    out[i] = a[i] < -1.0 ? -1.0 : (a[i] > 1.0 ? 1.0 : a[i]);
  }
  return out;
}

}  // namespace racer
