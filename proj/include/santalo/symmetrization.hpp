#pragma once

#include <algorithm>
#include <vector>

#include "santalo/symmetric_polygon.hpp"

namespace santalo {

/// A line through the origin, spanned by a unit direction.
class AxisLine {
 public:
  explicit AxisLine(const Vec2& direction) {
    const double n = direction.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("axis direction must be nonzero");
    direction_ = direction / n;
  }

  static AxisLine from_angle(double angle) { return AxisLine(unit_vector(angle)); }

  const Vec2& direction() const { return direction_; }
  Vec2 normal() const { return perp(direction_); }

  Vec2 reflect(const Vec2& x) const { return 2.0 * x.dot(direction_) * direction_ - x; }

 private:
  Vec2 direction_;
};

namespace detail {

struct Chord {
  double s;   // coordinate along the axis
  double lo;  // extent across the axis
  double hi;
};

/// Chord [lo, hi] across the axis at every vertex projection, via a sweep
/// over the two boundary chains that are monotone along the axis.
inline std::vector<Chord> chord_profile(const std::vector<Vec2>& ccw, const AxisLine& axis) {
  const std::size_t n = ccw.size();
  const Vec2 d = axis.direction();
  const Vec2 e = axis.normal();
  std::vector<Vec2> st(n);
  for (std::size_t i = 0; i < n; ++i) st[i] = {ccw[i].dot(d), ccw[i].dot(e)};
  const double eps = tolerance::kMergeRelative * point_scale(ccw);

  std::size_t i0 = 0, i1 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (st[i].x() < st[i0].x()) i0 = i;
    if (st[i].x() > st[i1].x()) i1 = i;
  }
  std::vector<Vec2> lower, upper;
  for (std::size_t i = i0;; i = (i + 1) % n) {
    lower.push_back(st[i]);
    if (i == i1) break;
  }
  for (std::size_t i = i1;; i = (i + 1) % n) {
    upper.push_back(st[i]);
    if (i == i0) break;
  }
  std::reverse(upper.begin(), upper.end());

  std::vector<double> breaks(n);
  for (std::size_t i = 0; i < n; ++i) breaks[i] = st[i].x();
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> merged;
  for (double b : breaks) {
    if (merged.empty() || b - merged.back() > eps) merged.push_back(b);
  }

  std::vector<Chord> out;
  out.reserve(merged.size());
  std::size_t kl = 0, ku = 0;
  auto sweep = [eps](const std::vector<Vec2>& chain, std::size_t& k, double s, double& lo, double& hi) {
    const std::size_t m = chain.size();
    while (k + 1 < m && chain[k + 1].x() < s - eps) ++k;
    for (std::size_t j = k; j < m && chain[j].x() <= s + eps; ++j) {
      if (std::abs(chain[j].x() - s) <= eps) {
        lo = std::min(lo, chain[j].y());
        hi = std::max(hi, chain[j].y());
      }
      if (j + 1 < m && chain[j + 1].x() - chain[j].x() > eps && chain[j].x() < s && chain[j + 1].x() > s) {
        const double t = (s - chain[j].x()) / (chain[j + 1].x() - chain[j].x());
        const double y = chain[j].y() + t * (chain[j + 1].y() - chain[j].y());
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
  };
  for (double s : merged) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    sweep(lower, kl, s, lo, hi);
    sweep(upper, ku, s, lo, hi);
    out.push_back({s, lo, hi});
  }
  return out;
}

inline std::vector<Vec2> symmetral_points(const std::vector<Vec2>& ccw, const AxisLine& axis) {
  const Vec2 d = axis.direction();
  const Vec2 e = axis.normal();
  std::vector<Vec2> pts;
  for (const auto& c : chord_profile(ccw, axis)) {
    const double half = 0.5 * std::max(0.0, c.hi - c.lo);
    pts.push_back(c.s * d + half * e);
    pts.push_back(c.s * d - half * e);
  }
  return pts;
}

}  // namespace detail

/// Steiner symmetral: every chord orthogonal to the axis is slid along itself
/// until its midpoint lies on the axis.
inline ConvexPolygon steiner_symmetral(const ConvexPolygon& p, const AxisLine& axis) {
  if (p.empty()) return {};
  return ConvexPolygon::hull(detail::symmetral_points(p.vertices(), axis));
}

inline SymmetricPolygon steiner_symmetral(const SymmetricPolygon& p, const AxisLine& axis) {
  const std::vector<Vec2> ring(p.vertices().begin(), p.vertices().end());
  return make_symmetric_polygon(detail::symmetral_points(ring, axis));
}

/// Mirror image in the axis.
inline ConvexPolygon reflect(const ConvexPolygon& p, const AxisLine& axis) {
  std::vector<Vec2> out;
  out.reserve(p.size());
  for (auto it = p.vertices().rbegin(); it != p.vertices().rend(); ++it) out.push_back(axis.reflect(*it));
  return ConvexPolygon(std::move(out));
}

inline SymmetricPolygon reflect(const SymmetricPolygon& p, const AxisLine& axis) {
  std::vector<Vec2> out;
  out.reserve(p.size());
  const auto v = p.vertices();
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(axis.reflect(*it));
  return SymmetricPolygon::from_vertices(std::move(out));
}

}  // namespace santalo
