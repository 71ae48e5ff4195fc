#include "racer/env/geometry.hpp"

#include <algorithm>
#include <limits>

namespace racer::env {

std::optional<double> ray_segment_intersect(Vec2 origin, Vec2 direction,
                                            const Segment& segment) {
  const Vec2 edge = segment.b - segment.a;
  const double denom = cross(direction, edge);
  if (std::abs(denom) < 1e-12 * std::max(1.0, length(edge))) return std::nullopt;
  const Vec2 to_start = segment.a - origin;
  const double t = cross(to_start, edge) / denom;
  const double u = cross(to_start, direction) / denom;
  if (t <= 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

double signed_area(const Quad& quad) {
  double twice = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    twice += cross(quad[i], quad[(i + 1) % quad.size()]);
  }
  return 0.5 * twice;
}

Vec2 centroid(const Quad& quad) {
  Vec2 sum{};
  for (const Vec2& v : quad) sum = sum + v;
  return 0.25 * sum;
}

bool is_convex_ccw(const Quad& quad) {
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 e0 = quad[(i + 1) % 4] - quad[i];
    const Vec2 e1 = quad[(i + 2) % 4] - quad[(i + 1) % 4];
    if (!(cross(e0, e1) > 0.0)) return false;
  }
  return signed_area(quad) > 0.0;
}

bool point_in_convex_quad(Vec2 p, const Quad& quad) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (cross(quad[(i + 1) % 4] - quad[i], p - quad[i]) < 0.0) return false;
  }
  return true;
}

namespace {

std::pair<double, double> project(const Quad& quad, Vec2 axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec2& v : quad) {
    const double s = dot(v, axis);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

bool separated_along_edges(const Quad& a, const Quad& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 e = a[(i + 1) % 4] - a[i];
    const Vec2 axis{-e.y, e.x};
    const auto [alo, ahi] = project(a, axis);
    const auto [blo, bhi] = project(b, axis);
    const double tol = 1e-9 * dot(axis, axis);
    if (ahi <= blo + tol || bhi <= alo + tol) return true;
  }
  return false;
}

}  // namespace

bool convex_quads_overlap(const Quad& a, const Quad& b) {
  return !separated_along_edges(a, b) && !separated_along_edges(b, a);
}

}  // namespace racer::env
