#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "racer/env/geometry.hpp"

namespace racer::env {

// Closed loop of quadrilateral checkpoints. Checkpoint i has vertices
// (left_i, right_i, right_{i+1}, left_{i+1}): edge 0-1 is the entry edge,
// edge 2-3 the exit edge, and edges 1-2 / 3-0 are the track walls.
struct Track {
  std::vector<Quad> checkpoints;
  std::uint64_t seed = 0;

  std::size_t size() const { return checkpoints.size(); }

  Vec2 checkpoint_center(std::size_t i) const { return centroid(checkpoints.at(i)); }

  // Direction of travel through checkpoint i: entry-edge midpoint towards
  // exit-edge midpoint.
  double checkpoint_heading(std::size_t i) const;

  // Side edges of every checkpoint.
  std::vector<Segment> walls() const;

  friend bool operator==(const Track&, const Track&) = default;
};

struct TrackGenParams {
  int min_points = 12;
  int max_points = 20;
  double min_radius = 150.0;
  double max_radius = 400.0;
  double half_width = 45.0;
  int max_attempts = 1000;
};

Track generate_track(std::uint64_t seed, const TrackGenParams& params = {});

// Human-readable descriptions of every violated track invariant
// (adjacency, convexity, non-overlap). Empty means valid.
std::vector<std::string> validate_track(const Track& track);

// Inside at least one checkpoint quadrilateral.
bool on_track(const Track& track, Vec2 p);

// Header `seed=<n>`, then one checkpoint per line as 8 comma-separated
// coordinates x0,y0,x1,y1,x2,y2,x3,y3.
void write_track(std::ostream& out, const Track& track);
Track read_track(std::istream& in);

}  // namespace racer::env
