#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "santalo/convex_polygon.hpp"

namespace santalo {

/// An o-symmetric convex polygon. The full counterclockwise vertex list is
/// stored; for 2m vertices, vertex i + m is exactly -vertex i.
class SymmetricPolygon {
 public:
  /// Validates a full counterclockwise vertex list. Near-duplicate vertices
  /// (closer than 1e-12 * diameter) are merged; anything else that breaks the
  /// invariants throws DegenerateBody.
  static SymmetricPolygon from_vertices(std::vector<Vec2> ccw) {
    const double diam = point_scale(ccw);
    if (!(diam > 0.0) || !std::isfinite(diam)) throw DegenerateBody("polygon has no extent");
    const double merge = tolerance::kMergeRelative * diam;
    std::vector<Vec2> ring;
    ring.reserve(ccw.size());
    for (const auto& v : ccw) {
      if (!v.allFinite()) throw DegenerateBody("non-finite vertex");
      if (ring.empty() || (v - ring.back()).norm() > merge) ring.push_back(v);
    }
    while (ring.size() > 1 && (ring.front() - ring.back()).norm() <= merge) ring.pop_back();

    const std::size_t n = ring.size();
    if (n < 4 || n % 2 != 0) {
      throw DegenerateBody("symmetric polygon needs an even vertex count >= 4, got " + std::to_string(n));
    }
    const std::size_t m = n / 2;
    for (std::size_t i = 0; i < m; ++i) {
      if ((ring[i + m] + ring[i]).norm() > 1e-9 * diam) {
        throw DegenerateBody("vertex list is not antipodally paired");
      }
      ring[i + m] = -ring[i];
    }
    const double flat = tolerance::kCollinearRelative * diam * diam;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = ring[(i + n - 1) % n];
      const Vec2& next = ring[(i + 1) % n];
      if (orient(prev, ring[i], next) <= flat) throw DegenerateBody("vertices are not strictly convex");
      if (cross(ring[i], next) <= 0.0) throw DegenerateBody("origin is not interior");
    }
    SymmetricPolygon out;
    out.vertices_ = std::move(ring);
    return out;
  }

  std::span<const Vec2> vertices() const { return vertices_; }
  /// The first half of the vertex list; the rest is its negation.
  std::span<const Vec2> half() const { return std::span<const Vec2>(vertices_).first(vertices_.size() / 2); }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }

  double area() const {
    double twice = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) twice += cross(vertices_[i], vertices_[(i + 1) % n]);
    return 0.5 * twice;
  }

  /// Largest distance between two points of the polygon.
  double diameter() const {
    double r = 0.0;
    for (const auto& v : vertices_) r = std::max(r, v.norm());
    return 2.0 * r;
  }

  ConvexPolygon as_convex() const { return ConvexPolygon(vertices_); }

 private:
  SymmetricPolygon() = default;
  std::vector<Vec2> vertices_;
};

/// Convex hull of the points together with their negatives.
inline SymmetricPolygon make_symmetric_polygon(std::span<const Vec2> half_vertices) {
  if (half_vertices.size() < 2) throw DegenerateBody("need at least two points");
  std::vector<Vec2> pts;
  pts.reserve(2 * half_vertices.size());
  for (const auto& v : half_vertices) {
    pts.push_back(v);
    pts.push_back(-v);
  }
  const ConvexPolygon hull = ConvexPolygon::hull(pts);
  if (hull.size() < 4 || !(hull.area() > 0.0)) throw DegenerateBody("hull has empty interior");
  return SymmetricPolygon::from_vertices(hull.vertices());
}

inline SymmetricPolygon make_symmetric_polygon(std::initializer_list<Vec2> half_vertices) {
  return make_symmetric_polygon(std::span<const Vec2>(half_vertices.begin(), half_vertices.size()));
}

/// Area of a polygon given by its vertex list.
inline double area(const SymmetricPolygon& p) { return p.area(); }
inline double area(const ConvexPolygon& p) { return p.area(); }

/// Polar body: each edge [v_i, v_{i+1}] becomes the vertex w with
/// <w, v_i> = <w, v_{i+1}> = 1. Vertex count and pairing are preserved.
inline SymmetricPolygon polar_dual(const SymmetricPolygon& p) {
  const auto v = p.vertices();
  const std::size_t n = v.size();
  std::vector<Vec2> out(n);
  const std::size_t m = n / 2;
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = detail::edge_polar_vertex(v[i], v[(i + 1) % n]);
    out[i + m] = -out[i];
  }
  return SymmetricPolygon::from_vertices(std::move(out));
}

/// Image under a nonsingular linear map, reoriented counterclockwise when the
/// map reverses orientation.
inline SymmetricPolygon linear_image(const SymmetricPolygon& p, const Mat2& phi) {
  const double det = phi.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-300 || condition_number(phi) > 1e14) {
    throw SingularMatrix("linear map is singular");
  }
  std::vector<Vec2> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) out.push_back(phi * v);
  if (det < 0.0) std::reverse(out.begin(), out.end());
  return SymmetricPolygon::from_vertices(std::move(out));
}

inline ConvexPolygon clip_halfplane(const SymmetricPolygon& p, const HalfPlane& h) {
  return clip_halfplane(p.as_convex(), h);
}

inline double symmetric_difference_area(const SymmetricPolygon& p, const SymmetricPolygon& q) {
  return symmetric_difference_area(p.as_convex(), q.as_convex());
}

inline double hausdorff_distance(const SymmetricPolygon& p, const SymmetricPolygon& q) {
  return hausdorff_distance(p.as_convex(), q.as_convex());
}

/// A body together with its polar.
struct BodyPair {
  SymmetricPolygon body;
  SymmetricPolygon polar;

  explicit BodyPair(SymmetricPolygon k) : body(std::move(k)), polar(polar_dual(body)) {}

  double area_sum() const { return body.area() + polar.area(); }
  double volume_product() const { return body.area() * polar.area(); }
};

}  // namespace santalo
