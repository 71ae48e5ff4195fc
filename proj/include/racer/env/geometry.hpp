#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace racer::env {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 unit_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct Segment {
  Vec2 a;
  Vec2 b;
};

// Vertices in counter-clockwise order.
using Quad = std::array<Vec2, 4>;

// Distance t > 0 along `direction` (unit length) at which the ray hits the
// closed segment, or nullopt if it misses, lies behind, or runs parallel.
std::optional<double> ray_segment_intersect(Vec2 origin, Vec2 direction,
                                            const Segment& segment);

double signed_area(const Quad& quad);
Vec2 centroid(const Quad& quad);

// Strictly convex with counter-clockwise winding and positive area.
bool is_convex_ccw(const Quad& quad);

// Boundary counts as inside. Assumes a counter-clockwise convex quad.
bool point_in_convex_quad(Vec2 p, const Quad& quad);

// Separating-axis overlap test for two convex quads; touching along an edge
// or at a vertex does not count as overlap.
bool convex_quads_overlap(const Quad& a, const Quad& b);

}  // namespace racer::env
