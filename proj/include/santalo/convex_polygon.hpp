#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "santalo/geometry.hpp"

namespace santalo {

namespace tolerance {
/// Vertices closer than this fraction of the diameter are merged.
inline constexpr double kMergeRelative = 1e-12;
/// Triples with |cross| below this fraction of scale^2 count as collinear.
inline constexpr double kCollinearRelative = 1e-14;
/// Edge systems of the polar construction above this condition number are rejected.
inline constexpr double kMaxEdgeCondition = 1e12;
}  // namespace tolerance

/// Bounding-box diagonal of a point set; the length scale used by all relative
/// tolerances.
inline double point_scale(std::span<const Vec2> pts) {
  if (pts.empty()) return 0.0;
  Vec2 lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

namespace detail {

/// Drops near-duplicate and collinear vertices of a counterclockwise ring.
inline std::vector<Vec2> clean_ring(std::vector<Vec2> ring, double scale) {
  const double merge = tolerance::kMergeRelative * scale;
  const double flat = tolerance::kCollinearRelative * scale * scale;
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    std::vector<Vec2> out;
    out.reserve(ring.size());
    for (const auto& v : ring) {
      if (out.empty() || (v - out.back()).norm() > merge) out.push_back(v);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= merge) out.pop_back();
    if (out.size() != ring.size()) changed = true;
    ring = std::move(out);
    if (ring.size() < 3) break;
    std::vector<Vec2> kept;
    kept.reserve(ring.size());
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = ring[(i + n - 1) % n];
      const Vec2& next = ring[(i + 1) % n];
      if (orient(prev, ring[i], next) > flat) kept.push_back(ring[i]);
    }
    if (kept.size() != ring.size()) changed = true;
    ring = std::move(kept);
  }
  if (ring.size() < 3) ring.clear();
  return ring;
}

/// Vertex w of the polar of the edge line through a and b: <w,a> = <w,b> = 1.
inline Vec2 edge_polar_vertex(const Vec2& a, const Vec2& b) {
  Mat2 rows;
  rows << a.x(), a.y(), b.x(), b.y();
  if (condition_number(rows) > tolerance::kMaxEdgeCondition) {
    throw NumericallySingularEdge("edge system is numerically singular");
  }
  const double det = cross(a, b);
  return Vec2{b.y() - a.y(), a.x() - b.x()} / det;
}

}  // namespace detail

/// A convex polygon with vertices in counterclockwise order. The empty
/// polygon (no vertices) is a valid value and represents the empty set.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Takes counterclockwise vertices in convex position; near-duplicate and
  /// collinear vertices are removed. Fewer than three survivors give the
  /// empty polygon.
  explicit ConvexPolygon(std::vector<Vec2> ccw_vertices) {
    const double scale = point_scale(ccw_vertices);
    vertices_ = detail::clean_ring(std::move(ccw_vertices), scale);
  }

  /// Convex hull (monotone chain), collinear points dropped.
  static ConvexPolygon hull(std::span<const Vec2> points) {
    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
      return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return {};
    // Exact turns here; near-duplicates and near-collinear vertices are
    // pruned by the constructor, where they are adjacent in cyclic order.
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0.0) --k;
      h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
      while (k >= lower && orient(h[k - 2], h[k - 1], *it) <= 0.0) --k;
      h[k++] = *it;
    }
    h.resize(k - 1);
    return ConvexPolygon(std::move(h));
  }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
  const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Shoelace area.
  double area() const {
    double twice = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) twice += cross(vertices_[i], vertices_[(i + 1) % n]);
    return 0.5 * twice;
  }

  double scale() const { return point_scale(vertices_); }

  /// Outward edge halfplanes, one per edge [v_i, v_{i+1}].
  std::vector<HalfPlane> edge_halfplanes() const {
    std::vector<HalfPlane> out;
    const std::size_t n = vertices_.size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = vertices_[i];
      const Vec2& b = vertices_[(i + 1) % n];
      const Vec2 normal{b.y() - a.y(), a.x() - b.x()};
      out.push_back({normal, normal.dot(a)});
    }
    return out;
  }

  /// Point membership with an absolute slack `tol` on every edge.
  bool contains(const Vec2& x, double tol = 0.0) const {
    if (empty()) return false;
    for (const auto& h : edge_halfplanes()) {
      if (h.signed_distance(x) > tol) return false;
    }
    return true;
  }

  /// Euclidean distance from x to the polygon (0 inside).
  double distance_to(const Vec2& x) const {
    if (empty()) return std::numeric_limits<double>::infinity();
    if (contains(x)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = vertices_[i];
      const Vec2 d = vertices_[(i + 1) % n] - a;
      const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (a + t * d - x).norm());
    }
    return best;
  }

  ConvexPolygon transformed(const Mat2& phi) const {
    std::vector<Vec2> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(phi * v);
    if (phi.determinant() < 0.0) std::reverse(out.begin(), out.end());
    return ConvexPolygon(std::move(out));
  }

 private:
  std::vector<Vec2> vertices_;
};

/// Intersection with a closed halfplane (Sutherland-Hodgman, one plane).
inline ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const HalfPlane& h) {
  if (poly.empty()) return {};
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  const double norm = h.normal.norm();
  std::vector<double> dist(n);
  bool all_inside = true;
  bool all_outside = true;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = (h.normal.dot(v[i]) - h.offset) / norm;
    all_inside = all_inside && dist[i] <= 0.0;
    all_outside = all_outside && dist[i] >= 0.0;
  }
  if (all_inside) return poly;
  if (all_outside) return {};
  std::vector<Vec2> out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (dist[i] <= 0.0) out.push_back(v[i]);
    if ((dist[i] < 0.0 && dist[j] > 0.0) || (dist[i] > 0.0 && dist[j] < 0.0)) {
      const double t = dist[i] / (dist[i] - dist[j]);
      out.push_back(v[i] + t * (v[j] - v[i]));
    }
  }
  return ConvexPolygon(std::move(out));
}

inline ConvexPolygon intersect(const ConvexPolygon& p, const ConvexPolygon& q) {
  // Clip the larger polygon by the halfplanes of the smaller one.
  const bool swap = p.size() < q.size();
  ConvexPolygon out = swap ? q : p;
  for (const auto& h : (swap ? p : q).edge_halfplanes()) {
    out = clip_halfplane(out, h);
    if (out.empty()) break;
  }
  return out;
}

/// |P \ Q| + |Q \ P|.
inline double symmetric_difference_area(const ConvexPolygon& p, const ConvexPolygon& q) {
  return std::max(0.0, p.area() + q.area() - 2.0 * intersect(p, q).area());
}

/// |P \ Q|.
inline double difference_area(const ConvexPolygon& p, const ConvexPolygon& q) {
  return std::max(0.0, p.area() - intersect(p, q).area());
}

/// Hausdorff distance; for convex polygons both directed distances are
/// attained at vertices.
inline double hausdorff_distance(const ConvexPolygon& p, const ConvexPolygon& q) {
  double d = 0.0;
  for (const auto& v : p.vertices()) d = std::max(d, q.distance_to(v));
  for (const auto& v : q.vertices()) d = std::max(d, p.distance_to(v));
  return d;
}

/// Polar of a convex polygon containing the origin in its interior. Used for
/// non-symmetric bodies such as the inscribed regular triangle.
inline ConvexPolygon polar_dual(const ConvexPolygon& poly) {
  if (poly.empty()) throw DegenerateBody("polar of an empty polygon");
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  const double scale = poly.scale();
  std::vector<Vec2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    if (cross(a, b) <= tolerance::kCollinearRelative * scale * scale) {
      throw DegenerateBody("origin is not interior to the polygon");
    }
    out.push_back(detail::edge_polar_vertex(a, b));
  }
  return ConvexPolygon(std::move(out));
}

}  // namespace santalo
