#include "racer/env/car.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace racer::env {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

double normalize_distance(double d, double range) {
  return 2.0 * std::min(d, range) / range - 1.0;
}

double normalize_speed(double v, double top_speed) { return 2.0 * v / top_speed - 1.0; }

CarState spawn_at(const Track& track, std::size_t index) {
  CarState car;
  car.position = track.checkpoint_center(index);
  car.heading = track.checkpoint_heading(index);
  car.speed = 0.0;
  car.last_checkpoint = index;
  return car;
}

ResetResult reset(const Track& track, const PhysicsParams& physics) {
  if (track.size() == 0) throw std::invalid_argument("reset: empty track");
  CarState car = spawn_at(track, 0);
  return {car, sense(car, track, physics)};
}

Observation sense(const CarState& car, const Track& track, const PhysicsParams& physics) {
  Observation obs;
  obs.speed = clamp_unit(normalize_speed(car.speed, physics.top_speed));
  if (!on_track(track, car.position)) {
    obs.distances.fill(-1.0);
    return obs;
  }
  const std::vector<Segment> walls = track.walls();
  for (std::size_t r = 0; r < kSensorCount; ++r) {
    const Vec2 dir = unit_from_angle(car.heading + physics.sensor_angles[r]);
    double nearest = physics.sensor_range;
    for (const Segment& wall : walls) {
      if (auto t = ray_segment_intersect(car.position, dir, wall)) nearest = std::min(nearest, *t);
    }
    obs.distances[r] = clamp_unit(normalize_distance(nearest, physics.sensor_range));
  }
  return obs;
}

StepResult step(const CarState& car, const EnvAction& action, const Track& track,
                const PhysicsParams& physics) {
  const double throttle = clamp_unit(action.throttle);
  const double steering = clamp_unit(action.steering);

  CarState next = car;
  const double target_speed = 0.5 * (throttle + 1.0) * physics.top_speed;
  const double max_delta = physics.max_acceleration * physics.dt;
  next.speed = car.speed + std::clamp(target_speed - car.speed, -max_delta, max_delta);
  next.speed = std::clamp(next.speed, 0.0, physics.top_speed);

  // Curvature is capped by the minimum turn radius at low speed and by the
  // maximum turn rate at high speed.
  const double radius = std::max(physics.min_turn_radius, next.speed / physics.max_turn_rate);
  const double turn_rate = steering * next.speed / radius;
  next.heading = wrap_angle(car.heading + turn_rate * physics.dt);
  next.position = car.position + (next.speed * physics.dt) * unit_from_angle(next.heading);

  StepResult result;
  if (!on_track(track, next.position)) {
    result.car = spawn_at(track, car.last_checkpoint);
    result.outcome.crashed = true;
    result.outcome.reward = kCrashReward;
  } else {
    const std::size_t successor = (car.last_checkpoint + 1) % track.size();
    if (point_in_convex_quad(next.position, track.checkpoints[successor])) {
      next.last_checkpoint = successor;
    }
    result.car = next;
    result.outcome.reward = next.speed / physics.top_speed;
  }
  result.outcome.observation = sense(result.car, track, physics);
  return result;
}

RacingEnv::RacingEnv(Track track, PhysicsParams physics, int frame_skip)
    : track_(std::move(track)), physics_(physics), frame_skip_(frame_skip) {
  if (frame_skip_ < 0) throw std::invalid_argument("RacingEnv: negative frame skip");
  car_ = spawn_at(track_, 0);
}

Observation RacingEnv::reset() {
  auto [car, obs] = env::reset(track_, physics_);
  car_ = car;
  return obs;
}

StepOutcome RacingEnv::step(const Action& action) {
  const EnvAction env_action{action[0], action[1]};
  StepOutcome total;
  for (int i = 0; i <= frame_skip_; ++i) {
    StepResult r = env::step(car_, env_action, track_, physics_);
    car_ = r.car;
    total.observation = r.outcome.observation;
    total.reward += r.outcome.reward;
    if (r.outcome.crashed) {
      total.crashed = true;
      break;
    }
  }
  return total;
}

}  // namespace racer::env
