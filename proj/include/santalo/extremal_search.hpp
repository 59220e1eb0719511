#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "santalo/cone.hpp"

namespace santalo {

/// Vertex v moved by `displacement` parallel to the chord [u, w] of its two
/// neighbours, towards w.
struct VariationMove {
  std::size_t vertex_index = 0;
  Vec2 displacement = Vec2::Zero();
  std::size_t from_index = 0;  // u
  std::size_t to_index = 0;    // w
};

namespace detail {

/// Parameter tau of the point u + tau (w - u) hit by the ray from o through v;
/// nullopt if the ray misses the line or points away from it.
inline std::optional<double> ray_chord_parameter(const Vec2& v, const Vec2& u, const Vec2& w) {
  const Vec2 e = w - u;
  const double den = cross(v, e);
  if (den == 0.0) return std::nullopt;
  const double tau = cross(u, v) / den;
  const Vec2 hit = u + tau * e;
  if (hit.dot(v) <= 0.0) return std::nullopt;
  return tau;
}

inline bool strictly_inside(const ConvexPolygon& poly, const Vec2& x, double margin) {
  for (const auto& h : poly.edge_halfplanes()) {
    if (h.signed_distance(x) >= -margin) return false;
  }
  return true;
}

/// Largest displacement along the unit chord direction e that carries the
/// ray through v onto the chord midpoint mu.
inline double displacement_to_midpoint(const Vec2& v, const Vec2& e, const Vec2& mu) {
  const double den = cross(e, mu);
  if (den == 0.0) return 0.0;
  return -cross(v, mu) / den;
}

}  // namespace detail

namespace detail {

/// Core of `apply_variation` on a raw counterclockwise vertex ring, which may
/// carry a vertex in the relative interior of a side (see `split_outer_side`).
inline ConeBody apply_variation_ring(const SectorFrame& f, std::vector<Vec2> ring, const VariationMove& mv) {
  const std::size_t n = ring.size();
  auto fail = [](const std::string& why) { throw HypothesisViolated("variation move: " + why); };
  if (n < 5) fail("body needs at least 5 vertices");
  if (mv.vertex_index >= n || mv.from_index >= n || mv.to_index >= n) fail("index out of range");
  const std::size_t i = mv.vertex_index;
  const std::size_t prev = (i + n - 1) % n;
  const std::size_t next = (i + 1) % n;
  if (!((mv.from_index == prev && mv.to_index == next) || (mv.from_index == next && mv.to_index == prev))) {
    fail("u and w must be the neighbours of v");
  }
  const double scale = std::max(1.0, point_scale(ring));
  const double tol = 1e-10 * scale;
  const Vec2 v = ring[i];
  if (v.norm() <= tol || (v - f.p()).norm() <= tol || (v - f.q()).norm() <= tol) fail("v must not be o, p or q");
  const Vec2 u = ring[mv.from_index];
  const Vec2 w = ring[mv.to_index];
  const Vec2 chord = w - u;
  const Vec2& d = mv.displacement;
  if (!(d.norm() > 0.0)) fail("zero displacement");
  if (std::abs(cross(d, chord)) > 1e-12 * d.norm() * chord.norm()) fail("displacement not parallel to the chord");
  if (d.dot(chord) <= 0.0) fail("displacement does not point towards w");

  const ConvexPolygon c = f.deltoid_polygon();
  if (!strictly_inside(c, 0.5 * (v + w), tol)) fail("[v, w] does not meet the interior of the deltoid");
  const auto s = ray_chord_parameter(v, u, w);
  if (!s || !(*s > 0.0 && *s < 0.5)) fail("s is not in (u, mu)");
  const Vec2 moved = v + d;
  if (!strictly_inside(c, moved, tol)) fail("moved vertex is not interior to the deltoid");
  const auto s_new = ray_chord_parameter(moved, u, w);
  if (!s_new || !(*s_new > *s && *s_new < 0.5)) fail("moved intersection is not in (s, mu)");

  ring[i] = moved;
  const double flat = tolerance::kCollinearRelative * scale * scale;
  for (std::size_t k : {prev, i, next}) {
    if (orient(ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]) <= flat) fail("convexity lost at a vertex");
  }
  ConvexPolygon poly(std::move(ring));
  if (poly.size() != n) fail("vertex count changed");
  return ConeBody::from_polygon(f, std::move(poly));
}

}  // namespace detail

/// Replaces vertex v of P by v + displacement after checking the hypotheses
/// of the move: u, v, w consecutive, the body has at least five vertices, the
/// displacement is nonzero and parallel to w - u, [v, w] meets the interior of
/// the deltoid, s = [o, v] ∩ [u, w] lies in (u, mu) and the moved intersection
/// lies in (s, mu), the moved vertex is interior to the deltoid and u, v~, w
/// stay strictly convex vertices.
inline ConeBody apply_variation(const ConeBody& p, const VariationMove& mv) {
  return detail::apply_variation_ring(p.frame(), p.vertices(), mv);
}

/// Collinearity defects of an extremal polygon along its proper vertices
/// x_0, ..., x_k. `midpoint` holds, for i = 1..k-1, the normalized cross
/// product of x_i and (x_{i-1} + x_{i+1}) / 2; `support` holds, for
/// i = 2..k-1, that of eta_i and (x_{i-1} + x_i) / 2, where eta_i is the
/// meeting point of the lines x_{i-2} x_{i-1} and x_i x_{i+1}.
struct EquilibriumResiduals {
  std::vector<double> midpoint;
  std::vector<double> support;

  double max_abs() const {
    double m = 0.0;
    for (double x : midpoint) m = std::max(m, std::abs(x));
    for (double x : support) m = std::max(m, std::abs(x));
    return m;
  }
};

inline double normalized_cross(const Vec2& a, const Vec2& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return cross(a, b) / (na * nb);
}

inline EquilibriumResiduals equilibrium_residuals(const ConeBody& p) {
  const auto idx = p.proper_vertices();
  std::vector<Vec2> x;
  for (auto i : idx) x.push_back(p.polygon()[i]);
  EquilibriumResiduals out;
  const std::size_t k1 = x.size();
  if (k1 < 3) return out;
  for (std::size_t i = 1; i + 1 < k1; ++i) out.midpoint.push_back(normalized_cross(x[i], 0.5 * (x[i - 1] + x[i + 1])));
  for (std::size_t i = 2; i + 1 < k1; ++i) {
    Vec2 eta;
    if (!line_intersection(x[i - 2], x[i - 1], x[i], x[i + 1], eta)) {
      throw ParallelSupportLines("support lines of consecutive sides are parallel");
    }
    out.support.push_back(normalized_cross(eta, 0.5 * (x[i - 1] + x[i])));
  }
  return out;
}

/// Least-squares centered conic x^T A x = 1 through a point set.
struct ConicFit {
  Mat2 form = Mat2::Zero();
  double residual = 0.0;  // max |x^T A x - 1|
};

inline ConicFit fit_centered_conic(std::span<const Vec2> pts) {
  if (pts.size() < 3) throw DomainError("conic fit needs at least 3 points");
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = pts[i].x() * pts[i].x();
    a(r, 1) = 2.0 * pts[i].x() * pts[i].y();
    a(r, 2) = pts[i].y() * pts[i].y();
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  ConicFit out;
  out.form << c(0), c(1), c(1), c(2);
  for (const auto& x : pts) out.residual = std::max(out.residual, std::abs(x.dot(out.form * x) - 1.0));
  return out;
}

inline ConicFit fit_proper_vertices(const ConeBody& p) {
  std::vector<Vec2> pts;
  for (auto i : p.proper_vertices()) pts.push_back(p.polygon()[i]);
  return fit_centered_conic(pts);
}

struct TraceRow {
  std::size_t iteration = 0;
  double area = 0.0;
  double polar_area = 0.0;
  double area_sum = 0.0;
  double max_residual = 0.0;
};

struct SearchOptions {
  double step = 0.05;
  std::size_t iterations = 20000;
  std::uint64_t seed = 0;
  double min_step = 1e-10;
  double min_gain = 1e-14;
  double stop_residual = 1e-6;         // stop once equilibrium residuals fall below
  std::size_t patience = 20;           // rejections before the step halves
  std::size_t symmetrize_every = 100;  // 0 disables
  std::size_t vertex_budget = 2;       // end refinements allowed per body
  bool dual_moves = true;
};

struct SearchResult {
  ConeBody body;
  std::vector<TraceRow> trace;
  std::size_t accepted = 0;
  std::size_t symmetrizations = 0;
  double final_step = 0.0;
  double final_residual = 0.0;
  bool stalled = false;  // step fell below min_step
};

namespace detail {

inline double residual_or_inf(const ConeBody& m) {
  try {
    return equilibrium_residuals(m).max_abs();
  } catch (const ParallelSupportLines&) {
    return std::numeric_limits<double>::infinity();
  }
}

/// Move of v towards the midpoint of its neighbour chord [a, b] (ring
/// indices), capped at `step`.
inline std::optional<VariationMove> propose_move(const std::vector<Vec2>& ring, std::size_t i, std::size_t a,
                                                 std::size_t b, double step) {
  const Vec2& v = ring[i];
  const auto tau = ray_chord_parameter(v, ring[a], ring[b]);
  if (!tau || *tau == 0.5) return std::nullopt;
  if (*tau > 0.5) std::swap(a, b);
  const Vec2 e = (ring[b] - ring[a]).normalized();
  const Vec2 mu = 0.5 * (ring[a] + ring[b]);
  const double full = displacement_to_midpoint(v, e, mu);
  const double lambda = std::min(step, (1.0 - 1e-6) * full);
  if (!(lambda > 0.0)) return std::nullopt;
  return VariationMove{i, lambda * e, a, b};
}

/// When the end proper vertex x (first if `at_p`, else last) lies on the
/// outer side through p (or q) away from p (or q), inserts a point of that
/// side at distance `length` from x, so that x becomes movable. Returns the
/// ring and the ring indices of the new point, x and the next proper vertex.
struct SplitSide {
  std::vector<Vec2> ring;
  std::size_t inserted;
  std::size_t end;
  std::size_t inner;
};

inline std::optional<SplitSide> split_outer_side(const ConeBody& m, const std::vector<std::size_t>& proper,
                                                 bool at_p, double length) {
  if (proper.size() < 2) return std::nullopt;
  const Vec2& corner = at_p ? m.frame().p() : m.frame().q();
  const std::size_t xi = at_p ? proper.front() : proper.back();
  const std::size_t yi = at_p ? proper[1] : proper[proper.size() - 2];
  const auto& verts = m.vertices();
  const Vec2& x = verts[xi];
  const double tol = 1e-10 * std::max(1.0, m.polygon().scale());
  const double side = (corner - x).norm();
  if (side <= tol || std::abs(x.dot(corner) - 1.0) > tol) return std::nullopt;
  const std::size_t n = verts.size();
  const Vec2 split = x + std::min(0.5, length / side) * (corner - x);
  SplitSide out;
  out.ring = verts;
  if ((verts[(xi + n - 1) % n] - corner).norm() <= tol) {
    out.ring.insert(out.ring.begin() + static_cast<std::ptrdiff_t>(xi), split);
    out.inserted = xi;
    out.end = xi + 1;
  } else {
    out.ring.insert(out.ring.begin() + static_cast<std::ptrdiff_t>(xi + 1), split);
    out.inserted = xi + 1;
    out.end = xi;
  }
  out.inner = yi > xi ? yi + 1 : yi;
  return out;
}

/// True if an end proper vertex sits on an outer side away from p or q and
/// the body is still below its vertex cap.
inline bool end_split_available(const ConeBody& m, std::size_t cap) {
  if (m.size() >= cap) return false;
  const auto proper = m.proper_vertices();
  return split_outer_side(m, proper, true, 1.0).has_value() || split_outer_side(m, proper, false, 1.0).has_value();
}

}  // namespace detail

/// Hill-climbs |M| + |M°| with variation moves on M and on M°, halving the
/// step after `patience` consecutive rejections. A move either pushes an
/// interior proper vertex towards the midpoint of its neighbour chord, or
/// splits an outer side next to an end proper vertex and pushes that vertex
/// off it (limited to `vertex_budget` new vertices per body). Every
/// `symmetrize_every` iterations the Steiner symmetral about the frame axis
/// replaces the iterate when it lowers neither the area sum nor the vertex
/// count. Stops when the step falls below `min_step`, or when the
/// equilibrium residuals fall below `stop_residual` and no end refinement is
/// left.
inline SearchResult local_search(const ConeBody& seed, const SearchOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  ConeBody cur = seed;
  double cur_sum = area_sum(cur);
  const std::size_t primal_cap = seed.size() + opt.vertex_budget;
  const std::size_t dual_cap = relative_polar(seed).size() + opt.vertex_budget;
  double step = opt.step;
  std::size_t rejections = 0;
  SearchResult res{seed, {}, 0, 0, step, 0.0, false};
  double residual = 0.0;
  bool settled = false;
  auto update = [&] {
    residual = detail::residual_or_inf(cur);
    settled = residual <= opt.stop_residual && !detail::end_split_available(cur, primal_cap) &&
              !(opt.dual_moves && detail::end_split_available(relative_polar(cur), dual_cap));
  };
  update();
  auto record = [&](std::size_t it) {
    const double a = cur.area();
    res.trace.push_back({it, a, cur_sum - a, cur_sum, residual});
  };
  record(0);
  std::bernoulli_distribution dual_coin(0.5);
  for (std::size_t it = 1; it <= opt.iterations && !settled; ++it) {
    if (opt.symmetrize_every > 0 && it % opt.symmetrize_every == 0) {
      try {
        auto sym = ConeBody::from_polygon(cur.frame(), steiner_symmetral(cur.polygon(), cur.frame().axis()));
        const double s = area_sum(sym);
        if (s >= cur_sum && sym.size() <= cur.size()) {
          cur = std::move(sym);
          cur_sum = s;
          ++res.symmetrizations;
        }
      } catch (const GeometryError&) {
      }
    }
    const bool dual = opt.dual_moves && dual_coin(rng);
    bool ok = false;
    try {
      const ConeBody base = dual ? relative_polar(cur) : cur;
      const auto proper = base.proper_vertices();
      std::optional<ConeBody> moved;
      if (proper.size() >= 2) {
        // Positions 0 and k are the end vertices; they move only off an outer side.
        std::uniform_int_distribution<std::size_t> pick(0, proper.size() - 1);
        const std::size_t pos = pick(rng);
        const bool end = pos == 0 || pos + 1 == proper.size();
        if (end && base.size() < (dual ? dual_cap : primal_cap)) {
          if (auto sp = detail::split_outer_side(base, proper, pos == 0, step)) {
            if (auto mv = detail::propose_move(sp->ring, sp->end, sp->inserted, sp->inner, step)) {
              moved = detail::apply_variation_ring(base.frame(), std::move(sp->ring), *mv);
            }
          }
        } else if (!end) {
          if (auto mv = detail::propose_move(base.vertices(), proper[pos], proper[pos - 1], proper[pos + 1], step)) {
            moved = apply_variation(base, *mv);
          }
        }
      }
      if (moved) {
        if (dual) moved = relative_polar(*moved);
        const double s = area_sum(*moved);
        if (s - cur_sum >= opt.min_gain) {
          cur = std::move(*moved);
          cur_sum = s;
          ok = true;
        }
      }
    } catch (const GeometryError&) {
    }
    if (ok) {
      ++res.accepted;
      rejections = 0;
      update();
    } else if (++rejections >= opt.patience) {
      step *= 0.5;
      rejections = 0;
    }
    record(it);
    if (step < opt.min_step) {
      res.stalled = true;
      break;
    }
  }
  res.body = cur;
  res.final_step = step;
  res.final_residual = residual;
  return res;
}

/// Seed for the search: o, p, q and `segments` - 1 points of the unit arc
/// from p to q, pulled inwards by a smooth random radial profile that is
/// symmetric about the frame axis and keeps the points in convex position.
template <class Rng>
ConeBody perturbed_arc_body(const SectorFrame& frame, std::size_t segments, double amplitude, Rng& rng) {
  if (segments < 2) throw DomainError("perturbed arc needs at least 2 segments");
  if (!(amplitude >= 0.0 && amplitude <= 0.05)) throw DomainError("perturbation amplitude must lie in [0, 0.05]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Curvature of the profile in the angle is bounded by 8 * amplitude * (pi / 2 / angle)^2
  // times sum 1 / h, which stays below the unit radius.
  const double squeeze = std::min(1.0, std::pow(frame.angle() / (kPi / 2), 2));
  std::array<double, 3> coef{};
  for (std::size_t h = 0; h < coef.size(); ++h) {
    const double order = static_cast<double>(h + 1);
    coef[h] = squeeze * amplitude * unit(rng) / (order * order * order);
  }
  std::vector<double> jitter(segments + 1, 0.0);
  for (std::size_t j = 1; 2 * j < segments; ++j) {
    jitter[j] = 0.4 * (unit(rng) - 0.5);
    jitter[segments - j] = -jitter[j];
  }
  const double n = static_cast<double>(segments);
  std::vector<Vec2> pts;
  for (std::size_t j = 1; j < segments; ++j) {
    const double frac = (static_cast<double>(j) + jitter[j]) / n;
    double radius = 1.0;
    for (std::size_t h = 0; h < coef.size(); ++h) {
      radius -= 0.5 * coef[h] * (1.0 - std::cos(2.0 * kPi * static_cast<double>(h + 1) * frac));
    }
    pts.push_back(radius * rotate(frame.p(), frame.orientation() * frame.angle() * frac));
  }
  return ConeBody::hull(frame, pts);
}

}  // namespace santalo
