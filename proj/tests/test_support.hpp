#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "santalo/bodies.hpp"
#include "santalo/cone.hpp"
#include "santalo/geometry.hpp"

namespace santalo::testing {

/// Crossing-number point-in-polygon test, independent of the library's
/// halfplane-based membership.
inline bool crossing_inside(const std::vector<Vec2>& poly, const Vec2& x) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > x.y()) != (b.y() > x.y()) && x.x() < (b.x() - a.x()) * (x.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  return inside;
}

/// Random matrix rotation * diag(s1, s2) * rotation with condition number at
/// most `max_cond` and random orientation.
inline Mat2 random_matrix(std::mt19937_64& rng, double max_cond = 100.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto rot = [](double a) {
    Mat2 r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
  };
  const double scale = std::exp(std::log(0.2) + unit(rng) * std::log(25.0));
  const double ratio = std::exp(unit(rng) * std::log(max_cond));
  Mat2 d = Mat2::Zero();
  d(0, 0) = scale;
  d(1, 1) = scale / ratio * (unit(rng) < 0.5 ? -1.0 : 1.0);
  return rot(2 * kPi * unit(rng)) * d * rot(2 * kPi * unit(rng));
}

/// A varied random symmetric polygon: size, sampling shape and seed all drawn
/// from `rng`.
inline SymmetricPolygon random_body(std::mt19937_64& rng, std::size_t max_half = 64) {
  std::uniform_int_distribution<std::size_t> half(2, max_half);
  std::uniform_int_distribution<int> shape(0, 2);
  return random_symmetric_polygon(half(rng), rng(), static_cast<SampleShape>(shape(rng)));
}

/// Largest distance from a vertex of one list to the nearest vertex of the other.
inline double vertex_match_error(std::span<const Vec2> a, std::span<const Vec2> b) {
  double worst = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const auto& x = pass == 0 ? a : b;
    const auto& y = pass == 0 ? b : a;
    for (const auto& v : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : y) best = std::min(best, (v - w).norm());
      worst = std::max(worst, best);
    }
  }
  return worst;
}

/// Area of the relative polar computed directly from its definition: the
/// deltoid cut by <x, v> <= 1 for every vertex v of M.
inline double relative_polar_area_by_clipping(const ConeBody& m) {
  ConvexPolygon poly = m.frame().deltoid_polygon();
  for (const auto& v : m.vertices()) {
    if (v.norm() > 0.0) poly = clip_halfplane(poly, HalfPlane{v, 1.0});
  }
  return poly.area();
}

}  // namespace santalo::testing
