#pragma once

#include <array>
#include <cstddef>
#include <numbers>

#include "racer/env/geometry.hpp"
#include "racer/env/track.hpp"
#include "racer/types.hpp"

namespace racer::env {

inline constexpr double kCrashReward = -10.0;

struct PhysicsParams {
  double dt = 1.0 / 30.0;
  double top_speed = 300.0;        // px/s
  double max_acceleration = 300.0; // px/s^2
  double sensor_range = 400.0;     // px
  double min_turn_radius = 40.0;   // px
  double max_turn_rate = 2.5;      // rad/s
  // Relative to heading, right to left.
  std::array<double, kSensorCount> sensor_angles{-std::numbers::pi / 2, -std::numbers::pi / 4, 0.0,
                                                 std::numbers::pi / 4, std::numbers::pi / 2};
};

struct CarState {
  Vec2 position;
  double heading = 0.0;  // radians
  double speed = 0.0;    // px/s, in [0, top_speed]
  std::size_t last_checkpoint = 0;

  friend bool operator==(const CarState&, const CarState&) = default;
};

struct EnvAction {
  double throttle = 0.0;
  double steering = 0.0;  // positive turns counter-clockwise
};

struct StepOutcome {
  Observation observation;
  double reward = 0.0;
  bool crashed = false;
};

struct ResetResult {
  CarState car;
  Observation observation;
};

struct StepResult {
  CarState car;
  StepOutcome outcome;
};

// Car parked at the middle of checkpoint `index`, facing along the track.
CarState spawn_at(const Track& track, std::size_t index);

ResetResult reset(const Track& track, const PhysicsParams& physics = {});

StepResult step(const CarState& car, const EnvAction& action, const Track& track,
                const PhysicsParams& physics = {});

Observation sense(const CarState& car, const Track& track, const PhysicsParams& physics = {});

double normalize_distance(double d, double range);
double normalize_speed(double v, double top_speed);

// Stateful wrapper used by the training loop.
class RacingEnv {
 public:
  explicit RacingEnv(Track track, PhysicsParams physics = {}, int frame_skip = 0);

  Observation reset();
  // Repeats the action for 1 + frame_skip physics steps; rewards add up and
  // the repeat stops at the first crash.
  StepOutcome step(const Action& action);

  const CarState& car() const { return car_; }
  const Track& track() const { return track_; }
  const PhysicsParams& physics() const { return physics_; }

 private:
  Track track_;
  PhysicsParams physics_;
  int frame_skip_;
  CarState car_;
};

}  // namespace racer::env
