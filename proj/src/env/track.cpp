#include "racer/env/track.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace racer::env {

double Track::checkpoint_heading(std::size_t i) const {
  const Quad& q = checkpoints.at(i);
  const Vec2 entry = 0.5 * (q[0] + q[1]);
  const Vec2 exit = 0.5 * (q[2] + q[3]);
  const Vec2 d = exit - entry;
  return std::atan2(d.y, d.x);
}

std::vector<Segment> Track::walls() const {
  std::vector<Segment> out;
  out.reserve(2 * checkpoints.size());
  for (const Quad& q : checkpoints) {
    out.push_back({q[1], q[2]});
    out.push_back({q[3], q[0]});
  }
  return out;
}

namespace {

Track build_candidate(std::mt19937_64& rng, const TrackGenParams& params) {
  std::uniform_int_distribution<int> count_dist(params.min_points, params.max_points);
  std::uniform_real_distribution<double> radius_dist(params.min_radius, params.max_radius);

  const int n = count_dist(rng);
  std::vector<double> radii(n);
  for (double& r : radii) r = radius_dist(rng);

  std::vector<double> smoothed(n);
  for (int k = 0; k < n; ++k) {
    smoothed[k] = (radii[(k + n - 1) % n] + radii[k] + radii[(k + 1) % n]) / 3.0;
  }

  std::vector<Vec2> center(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    center[k] = smoothed[k] * unit_from_angle(angle);
  }

  std::vector<Vec2> left(n);
  std::vector<Vec2> right(n);
  for (int k = 0; k < n; ++k) {
    const Vec2 tangent = center[(k + 1) % n] - center[(k + n - 1) % n];
    const double len = length(tangent);
    const Vec2 normal{-tangent.y / len, tangent.x / len};
    left[k] = center[k] + params.half_width * normal;
    right[k] = center[k] - params.half_width * normal;
  }

  Track track;
  track.checkpoints.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int next = (k + 1) % n;
    track.checkpoints.push_back({left[k], right[k], right[next], left[next]});
  }
  return track;
}

}  // namespace

Track generate_track(std::uint64_t seed, const TrackGenParams& params) {
  if (params.min_points < 3 || params.max_points < params.min_points) {
    throw std::invalid_argument("generate_track: bad control point range");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Track track = build_candidate(rng, params);
    track.seed = seed;
    if (validate_track(track).empty()) return track;
  }
  throw std::runtime_error("generate_track: no valid track within attempt limit");
}

std::vector<std::string> validate_track(const Track& track) {
  std::vector<std::string> problems;
  const std::size_t n = track.size();
  if (n < 3) {
    problems.push_back("fewer than 3 checkpoints");
    return problems;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Quad& q = track.checkpoints[i];
    const Quad& next = track.checkpoints[(i + 1) % n];
    if (!is_convex_ccw(q)) {
      problems.push_back("checkpoint " + std::to_string(i) + " is not convex");
    }
    if (!(q[3] == next[0] && q[2] == next[1])) {
      problems.push_back("checkpoint " + std::to_string(i) + " exit edge does not match successor entry");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // cyclic neighbours
      if (convex_quads_overlap(track.checkpoints[i], track.checkpoints[j])) {
        problems.push_back("checkpoints " + std::to_string(i) + " and " + std::to_string(j) +
                           " overlap");
      }
    }
  }
  return problems;
}

bool on_track(const Track& track, Vec2 p) {
  for (const Quad& q : track.checkpoints) {
    if (point_in_convex_quad(p, q)) return true;
  }
  return false;
}

void write_track(std::ostream& out, const Track& track) {
  out << "seed=" << track.seed << '\n';
  const auto old_precision = out.precision(17);
  for (const Quad& q : track.checkpoints) {
    for (std::size_t v = 0; v < 4; ++v) {
      if (v > 0) out << ',';
      out << q[v].x << ',' << q[v].y;
    }
    out << '\n';
  }
  out.precision(old_precision);
}

Track read_track(std::istream& in) {
  Track track;
  std::string line;
  if (!std::getline(in, line) || line.rfind("seed=", 0) != 0) {
    throw std::runtime_error("read_track: missing seed header");
  }
  track.seed = std::stoull(line.substr(5));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::array<double, 8> values{};
    std::size_t count = 0;
    while (std::getline(fields, field, ',')) {
      if (count == values.size()) throw std::runtime_error("read_track: too many fields");
      values[count++] = std::stod(field);
    }
    if (count != values.size()) throw std::runtime_error("read_track: expected 8 fields");
    Quad q;
    for (std::size_t v = 0; v < 4; ++v) q[v] = {values[2 * v], values[2 * v + 1]};
    track.checkpoints.push_back(q);
  }
  return track;
}

}  // namespace racer::env
