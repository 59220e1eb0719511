#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "santalo/special_functions.hpp"
#include "santalo/symmetric_polygon.hpp"

namespace santalo {

/// The unit ball of the l_p norm, |x|^p + |y|^p <= 1, discretized by
/// `n_vertices` boundary points.
struct LpBallSpec {
  double p = 2.0;
  std::size_t n_vertices = 2048;

  LpBallSpec(double exponent, std::size_t n) : p(exponent), n_vertices(n) {
    if (!(p > 1.0)) throw DomainError("l_p ball polygon requires p > 1");
    if (n < 8 || n % 2 != 0) throw DomainError("l_p ball polygon requires an even vertex count >= 8");
  }
};

/// Inscribed polygon with vertices (sgn c |c|^{2/p}, sgn s |s|^{2/p}) for
/// (c, s) = (cos t, sin t) at equally spaced t.
inline SymmetricPolygon lp_ball_polygon(const LpBallSpec& spec) {
  const std::size_t n = spec.n_vertices;
  const std::size_t m = n / 2;
  const double e = 2.0 / spec.p;
  std::vector<Vec2> v(n);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    const double c = std::cos(t);
    const double s = std::sin(t);
    v[j] = {std::copysign(std::pow(std::abs(c), e), c), std::copysign(std::pow(std::abs(s), e), s)};
    v[j + m] = -v[j];
  }
  return SymmetricPolygon::from_vertices(std::move(v));
}

/// |B^2_p| = 4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p).
inline double lp_ball_area(double p) {
  if (!(p >= 1.0)) throw DomainError("l_p ball area requires p >= 1");
  const double g1 = lanczos_gamma(1.0 + 1.0 / p);
  return 4.0 * g1 * g1 / lanczos_gamma(1.0 + 2.0 / p);
}

/// Polar exponent: (B^2_p)* = B^2_q with 1/p + 1/q = 1.
inline double conjugate_exponent(double p) { return p / (p - 1.0); }

enum class SampleShape { Disk, Annulus, Box };

/// Hull of n_half random points and their antipodes; deterministic per seed.
/// Degenerate draws are resampled up to 64 times.
inline SymmetricPolygon random_symmetric_polygon(std::size_t n_half, std::uint64_t rng_seed,
                                                 SampleShape shape = SampleShape::Disk) {
  if (n_half < 2) throw DomainError("random polygon needs n_half >= 2");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() -> Vec2 {
    switch (shape) {
      case SampleShape::Disk:
        return std::sqrt(unit(rng)) * unit_vector(2.0 * kPi * unit(rng));
      case SampleShape::Annulus:
        return (0.5 + 0.5 * unit(rng)) * unit_vector(2.0 * kPi * unit(rng));
      case SampleShape::Box:
        return {2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
    }
    return {};
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec2> pts(n_half);
    for (auto& x : pts) x = draw();
    try {
      return make_symmetric_polygon(pts);
    } catch (const DegenerateBody&) {
    }
  }
  throw DegenerateBody("random polygon generation kept producing degenerate hulls");
}

/// Vertices at angles 2 pi j / k on the circle of the given radius.
inline ConvexPolygon regular_polygon(std::size_t k, double circumradius) {
  if (k < 3 || !(circumradius > 0.0)) throw DomainError("regular polygon needs k >= 3 and a positive radius");
  std::vector<Vec2> v(k);
  for (std::size_t j = 0; j < k; ++j) {
    v[j] = circumradius * unit_vector(2.0 * kPi * static_cast<double>(j) / static_cast<double>(k));
  }
  return ConvexPolygon(std::move(v));
}

inline SymmetricPolygon regular_symmetric_polygon(std::size_t k, double circumradius = 1.0) {
  if (k % 2 != 0) throw DomainError("a regular polygon is o-symmetric only for even k");
  return SymmetricPolygon::from_vertices(regular_polygon(k, circumradius).vertices());
}

/// Volumes of the cube, the cross-polytope and the ball in dimension n, and
/// whether |cube| + |cube*| exceeds 2 |B^n|.
struct HighDimCounterexample {
  int dimension = 0;
  double cube_volume = 0.0;
  double cross_volume = 0.0;
  double ball_volume = 0.0;
  bool sum_exceeds = false;
};

inline HighDimCounterexample highdim_counterexample(int n) {
  if (n < 3) throw DomainError("the cube counterexample concerns dimensions n >= 3");
  HighDimCounterexample out;
  out.dimension = n;
  out.cube_volume = std::ldexp(1.0, n);
  out.cross_volume = out.cube_volume / lanczos_gamma(static_cast<double>(n) + 1.0);
  out.ball_volume = std::pow(kPi, 0.5 * n) / lanczos_gamma(0.5 * n + 1.0);
  out.sum_exceeds = out.cube_volume + out.cross_volume > 2.0 * out.ball_volume;
  return out;
}

}  // namespace santalo
