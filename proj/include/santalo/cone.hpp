#pragma once

#include <array>
#include <random>
#include <span>
#include <vector>

#include "santalo/symmetrization.hpp"

namespace santalo {

/// Two unit vectors p, q spanning the cone sigma = {t p + s q : s, t >= 0}
/// with angle in (0, pi/2]. The tangent lines to the unit circle at p and q
/// meet at r; [o, p, r, q] is the deltoid.
class SectorFrame {
 public:
  SectorFrame(const Vec2& p, const Vec2& q) {
    if (std::abs(p.norm() - 1.0) > 1e-9 || std::abs(q.norm() - 1.0) > 1e-9) {
      throw DomainError("sector frame vectors must be unit");
    }
    p_ = p.normalized();
    q_ = q.normalized();
    const double c = std::clamp(p_.dot(q_), -1.0, 1.0);
    angle_ = std::acos(c);
    const double s = cross(p_, q_);
    if (std::abs(s) <= 1e-12) throw DomainError("sector frame needs p != +-q");
    if (angle_ > kPi / 2.0 + 1e-12) throw DomainError("sector angle must lie in (0, pi/2]");
    orientation_ = s > 0.0 ? 1 : -1;
  }

  /// p at angle `rotation`, q turned counterclockwise from p by `angle`.
  static SectorFrame from_angle(double angle, double rotation = 0.0) {
    return {unit_vector(rotation), unit_vector(rotation + angle)};
  }

  const Vec2& p() const { return p_; }
  const Vec2& q() const { return q_; }
  double angle() const { return angle_; }
  /// +1 when q is counterclockwise from p.
  int orientation() const { return orientation_; }
  bool is_orthogonal(double tol = 1e-12) const { return std::abs(angle_ - kPi / 2.0) <= tol; }

  Vec2 r() const { return (p_ + q_) / (1.0 + p_.dot(q_)); }

  /// The symmetry axis through o and (p + q) / 2.
  AxisLine axis() const { return AxisLine(p_ + q_); }

  /// sigma as the intersection of two halfplanes through o.
  std::array<HalfPlane, 2> cone_halfplanes() const {
    const double o = orientation_;
    return {HalfPlane{-o * perp(p_), 0.0}, HalfPlane{o * perp(q_), 0.0}};
  }

  bool in_cone(const Vec2& x, double tol = 0.0) const {
    for (const auto& h : cone_halfplanes()) {
      if (h.signed_distance(x) > tol) return false;
    }
    return true;
  }

  /// Counterclockwise [o, p, r, q] (or [o, q, r, p]).
  ConvexPolygon deltoid_polygon() const {
    if (orientation_ > 0) return ConvexPolygon({Vec2::Zero(), p_, r(), q_});
    return ConvexPolygon({Vec2::Zero(), q_, r(), p_});
  }

 private:
  Vec2 p_, q_;
  double angle_ = 0.0;
  int orientation_ = 1;
};

/// A convex polygon M with o, p, q in M and M inside the deltoid of its frame.
class ConeBody {
 public:
  static constexpr double kContainmentTol = 1e-10;

  static ConeBody from_polygon(const SectorFrame& frame, ConvexPolygon poly) {
    if (poly.empty()) throw DegenerateBody("cone body is empty");
    const double tol = kContainmentTol * std::max(1.0, poly.scale());
    for (const Vec2& x : {Vec2(Vec2::Zero()), frame.p(), frame.q()}) {
      if (!poly.contains(x, tol)) throw DegenerateBody("cone body must contain o, p and q");
    }
    const ConvexPolygon deltoid = frame.deltoid_polygon();
    for (const auto& v : poly.vertices()) {
      if (!deltoid.contains(v, tol)) throw DegenerateBody("cone body leaves the deltoid");
    }
    return ConeBody(frame, std::move(poly));
  }

  /// Hull of the points together with o, p and q.
  static ConeBody hull(const SectorFrame& frame, std::span<const Vec2> pts) {
    std::vector<Vec2> all(pts.begin(), pts.end());
    all.push_back(Vec2::Zero());
    all.push_back(frame.p());
    all.push_back(frame.q());
    return from_polygon(frame, ConvexPolygon::hull(all));
  }

  const SectorFrame& frame() const { return frame_; }
  const ConvexPolygon& polygon() const { return poly_; }
  const std::vector<Vec2>& vertices() const { return poly_.vertices(); }
  std::size_t size() const { return poly_.size(); }
  double area() const { return poly_.area(); }

  /// Index of the vertex nearest to x.
  std::size_t nearest_vertex(const Vec2& x) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < poly_.size(); ++i) {
      if ((poly_[i] - x).squaredNorm() < (poly_[best] - x).squaredNorm()) best = i;
    }
    return best;
  }

  /// Boundary vertex indices from p to q along the side away from o.
  std::vector<std::size_t> outer_chain() const {
    const std::size_t n = poly_.size();
    const std::size_t io = nearest_vertex(Vec2::Zero());
    std::vector<std::size_t> chain;
    for (std::size_t k = 1; k < n; ++k) chain.push_back((io + k) % n);
    if (frame_.orientation() < 0) std::reverse(chain.begin(), chain.end());
    return chain;
  }

  /// Endpoints of the sides that meet the interior of the deltoid, ordered
  /// from the p end to the q end.
  std::vector<std::size_t> proper_vertices() const {
    const auto chain = outer_chain();
    const double tol = 1e-10 * std::max(1.0, poly_.scale());
    auto on_line = [&](const Vec2& x, const Vec2& n) { return std::abs(x.dot(n) - 1.0) <= tol; };
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const Vec2& a = poly_[chain[j]];
      const Vec2& b = poly_[chain[j + 1]];
      const bool outer = (on_line(a, frame_.p()) && on_line(b, frame_.p())) ||
                         (on_line(a, frame_.q()) && on_line(b, frame_.q()));
      if (outer) continue;
      if (out.empty() || out.back() != chain[j]) out.push_back(chain[j]);
      out.push_back(chain[j + 1]);
    }
    return out;
  }

 private:
  ConeBody(const SectorFrame& frame, ConvexPolygon poly) : frame_(frame), poly_(std::move(poly)) {}

  SectorFrame frame_;
  ConvexPolygon poly_;
};

inline ConeBody deltoid(const SectorFrame& frame) { return ConeBody::from_polygon(frame, frame.deltoid_polygon()); }

/// M° = (hull of M and -M)* intersected with the cone.
inline ConeBody relative_polar(const ConeBody& m) {
  const SymmetricPolygon k = make_symmetric_polygon(m.vertices());
  ConvexPolygon poly = polar_dual(k).as_convex();
  for (const auto& h : m.frame().cone_halfplanes()) poly = clip_halfplane(poly, h);
  return ConeBody::from_polygon(m.frame(), std::move(poly));
}

/// |M| + |M°|.
inline double area_sum(const ConeBody& m) { return m.area() + relative_polar(m).area(); }

/// {x in C : <x, r> <= |r|^2 - t}, a pentagon for 0 < t < |r|^2 - 1.
inline ConeBody truncated_deltoid(const SectorFrame& frame, double t) {
  const Vec2 r = frame.r();
  if (!(t > 0.0 && t < r.squaredNorm() - 1.0)) throw DomainError("truncation depth out of range");
  return ConeBody::from_polygon(frame, clip_halfplane(frame.deltoid_polygon(), HalfPlane{r, r.squaredNorm() - t}));
}

/// o together with `arc_n` + 1 equally spaced points of the unit arc from p to q.
inline ConeBody disk_sector_body(const SectorFrame& frame, std::size_t arc_n) {
  if (arc_n < 1) throw DomainError("arc needs at least one segment");
  std::vector<Vec2> pts;
  for (std::size_t j = 0; j <= arc_n; ++j) {
    pts.push_back(rotate(frame.p(), frame.orientation() * frame.angle() * static_cast<double>(j) /
                                        static_cast<double>(arc_n)));
  }
  return ConeBody::hull(frame, pts);
}

/// M ∪ ℵ in the frame (p, q'), q' ⟂ p, where ℵ is the unit-disk sector
/// between q and q' discretized with `arc_n` segments.
inline ConeBody orthogonalize(const ConeBody& m, std::size_t arc_n = 512) {
  const SectorFrame& f = m.frame();
  if (f.is_orthogonal()) throw AlreadyOrthogonal("frame is already orthogonal");
  const double gap = kPi / 2.0 - f.angle();
  const Vec2 q_orth = f.orientation() * perp(f.p());
  const SectorFrame wide(f.p(), q_orth);
  std::vector<Vec2> pts = m.vertices();
  for (std::size_t j = 0; j <= arc_n; ++j) {
    pts.push_back(rotate(f.q(), f.orientation() * gap * static_cast<double>(j) / static_cast<double>(arc_n)));
  }
  return ConeBody::hull(wide, pts);
}

/// Chord through m with m as midpoint, cutting the cone with apex `apex`
/// spanned by directions d1, d2; b1 lies on the first ray, b2 on the second.
struct CutChord {
  Vec2 b1;
  Vec2 b2;
  double area = 0.0;  // area of the triangle [apex, b1, b2]
  HalfPlane line;     // the chord line as {x : <x, normal> = offset}
};

inline CutChord minimal_cut_line(const Vec2& apex, const Vec2& d1, const Vec2& d2, const Vec2& m) {
  const double den = cross(d1, d2);
  if (std::abs(den) <= 1e-14 * d1.norm() * d2.norm()) throw DomainError("cone rays are collinear");
  const Vec2 rel = m - apex;
  const double alpha = cross(rel, d2) / den;
  const double beta = cross(d1, rel) / den;
  if (!(alpha > 0.0 && beta > 0.0)) throw PointNotInterior("point is not interior to the cone");
  CutChord out;
  out.b1 = apex + 2.0 * alpha * d1;
  out.b2 = apex + 2.0 * beta * d2;
  out.area = 0.5 * std::abs(orient(apex, out.b1, out.b2));
  const Vec2 normal = perp(out.b2 - out.b1);
  out.line = HalfPlane{normal, normal.dot(m)};
  return out;
}

/// Area sum of the ellipse sector with cos(beta) = t in the orthogonal frame:
/// f(t) = t + (2 - t^2) / sqrt(1 - t^2) * atan(sqrt((1 - t) / (1 + t))).
inline double extremal_sector_value(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("extremal sector value is defined on [0, 1)");
  return t + (2.0 - t * t) / std::sqrt(1.0 - t * t) * std::atan(std::sqrt((1.0 - t) / (1.0 + t)));
}

/// Half-axes of the ellipse through p and q with a cos(beta/2) = b sin(beta/2) = 1/sqrt(2).
struct SectorEllipseAxes {
  double beta;
  double a;  // along the symmetry axis
  double b;  // across it
};

inline SectorEllipseAxes sector_ellipse_axes(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("ellipse sector parameter must lie in [0, 1)");
  const double beta = std::acos(t);
  return {beta, 1.0 / (std::sqrt(2.0) * std::cos(beta / 2.0)), 1.0 / (std::sqrt(2.0) * std::sin(beta / 2.0))};
}

/// Polygonal E ∩ C for the ellipse of `sector_ellipse_axes(t)`, with n arc segments.
inline ConeBody ellipse_sector_body(double t, const SectorFrame& frame, std::size_t n) {
  if (!frame.is_orthogonal()) throw DomainError("ellipse sector body needs an orthogonal frame");
  if (n < 64) throw DomainError("ellipse sector body needs n >= 64");
  const auto ax = sector_ellipse_axes(t);
  const Vec2 u = (frame.p() + frame.q()).normalized();
  const Vec2 v = std::sqrt(2.0) * frame.p() - u;
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double phi = -ax.beta / 2.0 + ax.beta * static_cast<double>(j) / static_cast<double>(n);
    pts.push_back(ax.a * std::cos(phi) * u + ax.b * std::sin(phi) * v);
  }
  return ConeBody::hull(frame, pts);
}

enum class BodyType { A, B, Neither };

/// Length of M ∩ [p, r] (side = 0) or M ∩ [q, r] (side = 1).
inline double side_contact_length(const ConeBody& m, int side) {
  const Vec2& anchor = side == 0 ? m.frame().p() : m.frame().q();
  const double tol = 1e-10 * std::max(1.0, m.polygon().scale());
  double len = 0.0;
  for (const auto& v : m.vertices()) {
    if (std::abs(v.dot(anchor) - 1.0) <= tol) len = std::max(len, (v - anchor).norm());
  }
  return len;
}

/// Type A meets both outer sides in segments, type B only at p and q.
inline BodyType classify_type(const ConeBody& m, double tol = 1e-8) {
  const double lp = side_contact_length(m, 0);
  const double lq = side_contact_length(m, 1);
  if (lp > tol && lq > tol) return BodyType::A;
  if (lp <= tol && lq <= tol) return BodyType::B;
  return BodyType::Neither;
}

/// Hull of o, p, q and `n_points` uniform samples of the deltoid.
template <class Rng>
ConeBody random_cone_body(const SectorFrame& frame, std::size_t n_points, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec2 r = frame.r();
  std::vector<Vec2> pts;
  pts.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const Vec2& corner = unit(rng) < 0.5 ? frame.p() : frame.q();
    double a = unit(rng), b = unit(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    pts.push_back(a * corner + b * r);
  }
  return ConeBody::hull(frame, pts);
}

}  // namespace santalo
