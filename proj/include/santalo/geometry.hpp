#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

#include "santalo/errors.hpp"

namespace santalo {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = std::numbers::pi;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Twice the signed area of the triangle (a, b, c); positive for a left turn.
inline double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); }

/// Counterclockwise rotation by a right angle.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Closed halfplane {x : <x, normal> <= offset}.
struct HalfPlane {
  Vec2 normal{1.0, 0.0};
  double offset = 0.0;

  double signed_distance(const Vec2& x) const { return (normal.dot(x) - offset) / normal.norm(); }
  HalfPlane complement() const { return {-normal, -offset}; }
};

/// The line {x : <x, normal> = 1}. Its polar is the point `normal`.
struct LineNotThroughOrigin {
  Vec2 normal;

  explicit LineNotThroughOrigin(const Vec2& n) : normal(n) {
    if (n.squaredNorm() == 0.0) throw DomainError("line normal must be nonzero");
  }

  /// Line through two points a != b not collinear with the origin.
  static LineNotThroughOrigin through(const Vec2& a, const Vec2& b) {
    const double det = cross(a, b);
    if (det == 0.0) throw DomainError("line through the origin has no polar point");
    return LineNotThroughOrigin(Vec2{b.y() - a.y(), a.x() - b.x()} / det);
  }

  Vec2 polar_point() const { return normal; }
  bool contains(const Vec2& x, double tol) const { return std::abs(normal.dot(x) - 1.0) <= tol; }
};

/// Intersection of aff{a1, b1} and aff{a2, b2}. Returns false for (nearly)
/// parallel lines and leaves `out` untouched.
inline bool line_intersection(const Vec2& a1, const Vec2& b1, const Vec2& a2, const Vec2& b2, Vec2& out) {
  const Vec2 d1 = b1 - a1;
  const Vec2 d2 = b2 - a2;
  const double den = cross(d1, d2);
  const double scale = d1.norm() * d2.norm();
  if (std::abs(den) <= 1e-14 * scale) return false;
  const double s = cross(a2 - a1, d2) / den;
  out = a1 + s * d1;
  return true;
}

/// Condition number of a 2x2 matrix in the spectral norm.
inline double condition_number(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(1) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(1);
}

/// Symmetric positive definite square root and its inverse.
inline Mat2 spd_sqrt(const Mat2& a) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(a);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

inline Mat2 spd_inv_sqrt(const Mat2& a) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(a);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace santalo
