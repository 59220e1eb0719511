#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "santalo/bodies.hpp"
#include "santalo/polygon_io.hpp"
#include "santalo/symmetric_polygon.hpp"
#include "test_support.hpp"

namespace santalo {
namespace {

SymmetricPolygon square() { return make_symmetric_polygon({Vec2(1, 1), Vec2(-1, 1)}); }

TEST(MakeSymmetricPolygon, CrossFromTwoPoints) {
  const auto p = make_symmetric_polygon({Vec2(1, 0), Vec2(0, 1)});
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NEAR(p.area(), 2.0, 1e-15);
  for (const auto& v : p.vertices()) EXPECT_NEAR(v.lpNorm<1>(), 1.0, 1e-15);
}

TEST(MakeSymmetricPolygon, SquareFromTwoCorners) {
  const auto p = square();
  ASSERT_EQ(p.size(), 4u);
  EXPECT_DOUBLE_EQ(p.area(), 4.0);
  for (const auto& v : p.vertices()) EXPECT_DOUBLE_EQ(v.cwiseAbs().minCoeff(), 1.0);
}

TEST(MakeSymmetricPolygon, AntipodalPairingAndCollinearRemoval) {
  // (0.5, 0.5) is interior; (1, 0.5) sits on the edge between (1, 1) and (1, -1).
  const auto p = make_symmetric_polygon({Vec2(1, 1), Vec2(-1, 1), Vec2(0.5, 0.5), Vec2(1, 0.5)});
  ASSERT_EQ(p.size(), 4u);
  const std::size_t m = p.size() / 2;
  for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(p[i + m], -p[i]);
}

TEST(MakeSymmetricPolygon, DegenerateInputs) {
  EXPECT_THROW(make_symmetric_polygon({Vec2(1, 1), Vec2(2, 2)}), DegenerateBody);
  EXPECT_THROW(make_symmetric_polygon({Vec2(1, 1)}), DegenerateBody);
  EXPECT_THROW(SymmetricPolygon::from_vertices({Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0)}), DegenerateBody);
  // Not antipodal.
  EXPECT_THROW(SymmetricPolygon::from_vertices({Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -2)}),
               DegenerateBody);
  // Clockwise.
  EXPECT_THROW(SymmetricPolygon::from_vertices({Vec2(1, 0), Vec2(0, -1), Vec2(-1, 0), Vec2(0, 1)}),
               DegenerateBody);
}

TEST(MakeSymmetricPolygon, MonteCarloAreaOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> pts(100);
  for (auto& x : pts) x = std::sqrt(unit(rng)) * unit_vector(2 * kPi * unit(rng));
  const auto p = make_symmetric_polygon(pts);
  const std::vector<Vec2> ring(p.vertices().begin(), p.vertices().end());
  const std::size_t samples = 400000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec2 x(2 * unit(rng) - 1, 2 * unit(rng) - 1);
    if (testing::crossing_inside(ring, x)) ++hits;
  }
  const double frac = static_cast<double>(hits) / samples;
  const double estimate = 4.0 * frac;
  const double sigma = 4.0 * std::sqrt(frac * (1 - frac) / samples);
  EXPECT_NEAR(p.area(), estimate, 3 * sigma);
}

TEST(Area, ClosedForms) {
  EXPECT_DOUBLE_EQ(square().area(), 4.0);
  for (std::size_t n : {4u, 6u, 10u, 64u}) {
    const double N = n / 2.0;
    EXPECT_NEAR(regular_symmetric_polygon(n).area(), N * std::sin(kPi / N), 1e-13);
  }
  EXPECT_NEAR(regular_symmetric_polygon(4096).area(), kPi, 1e-5);
}

TEST(PolarDual, SquareToCross) {
  const auto q = polar_dual(square());
  ASSERT_EQ(q.size(), 4u);
  EXPECT_DOUBLE_EQ(q.area(), 2.0);
  for (const auto& v : q.vertices()) {
    EXPECT_DOUBLE_EQ(v.lpNorm<1>(), 1.0);
    EXPECT_DOUBLE_EQ(v.cwiseAbs().minCoeff(), 0.0);
  }
}

TEST(PolarDual, DiskPolygonIsCircumscribed) {
  // Polar of the inscribed 2N-gon is the 2N-gon with inradius 1.
  for (std::size_t n : {4u, 8u, 64u, 512u}) {
    const double two_n = static_cast<double>(n);
    EXPECT_NEAR(polar_dual(regular_symmetric_polygon(n)).area(), two_n * std::tan(kPi / two_n), 1e-12);
  }
}

TEST(PolarDual, HexagonRotatesAndScales) {
  const auto hex = regular_symmetric_polygon(6);
  const auto dual = polar_dual(hex);
  ASSERT_EQ(dual.size(), 6u);
  // Tangent lines <x, v_i> = 1 at consecutive vertices meet at angle 30 + 60 k
  // degrees, distance 1 / cos(30 deg).
  std::vector<Vec2> expected;
  for (int k = 0; k < 6; ++k) expected.push_back(2.0 / std::sqrt(3.0) * unit_vector(kPi / 6 + k * kPi / 3));
  EXPECT_LT(testing::vertex_match_error(dual.vertices(), expected), 1e-14);
}

TEST(PolarDual, SingularEdgeSystem) {
  EXPECT_THROW(detail::edge_polar_vertex(Vec2(1, 0), Vec2(1, 1e-14)), NumericallySingularEdge);
}

TEST(PolarDual, PlainPolygonNeedsInteriorOrigin) {
  const ConvexPolygon shifted({Vec2(1, 1), Vec2(2, 1), Vec2(2, 2), Vec2(1, 2)});
  EXPECT_THROW(polar_dual(shifted), DegenerateBody);
}

TEST(LinearImage, Examples) {
  const auto sq = square();
  const auto same = linear_image(sq, Mat2::Identity());
  EXPECT_EQ(testing::vertex_match_error(same.vertices(), sq.vertices()), 0.0);
  Mat2 d = Mat2::Zero();
  d(0, 0) = 2;
  d(1, 1) = 1;
  const auto wide = linear_image(sq, d);
  EXPECT_DOUBLE_EQ(wide.area(), 8.0);
  const std::vector<Vec2> expected{{2, 1}, {-2, 1}, {-2, -1}, {2, -1}};
  EXPECT_EQ(testing::vertex_match_error(wide.vertices(), expected), 0.0);
  EXPECT_THROW(linear_image(sq, Mat2::Zero()), SingularMatrix);
}

TEST(LinearImage, OrientationReversingMapStaysCounterclockwise) {
  Mat2 flip;
  flip << 1, 0, 0, -1;
  const auto p = linear_image(regular_symmetric_polygon(10), flip);
  EXPECT_GT(p.area(), 0.0);
}

TEST(ClipHalfplane, Examples) {
  const auto sq = square();
  const auto half = clip_halfplane(sq, HalfPlane{Vec2(-1, 0), 0.0});
  EXPECT_DOUBLE_EQ(half.area(), 2.0);
  const auto same = clip_halfplane(sq, HalfPlane{Vec2(1, 0), 1.0});
  EXPECT_DOUBLE_EQ(same.area(), 4.0);
  EXPECT_TRUE(clip_halfplane(sq, HalfPlane{Vec2(1, 0), -1.0}).empty());
  const auto seg = clip_halfplane(regular_symmetric_polygon(1024), HalfPlane{Vec2(-1, 0), -0.5});
  EXPECT_NEAR(seg.area(), kPi / 3 - std::sqrt(3.0) / 4, 1e-4);
}

TEST(SetDistances, Examples) {
  const auto small = square();
  const auto big = make_symmetric_polygon({Vec2(2, 2), Vec2(-2, 2)});
  EXPECT_NEAR(symmetric_difference_area(small, small), 0.0, 1e-14);
  EXPECT_NEAR(symmetric_difference_area(small, big), 12.0, 1e-13);
  EXPECT_NEAR(symmetric_difference_area(regular_symmetric_polygon(4096), regular_symmetric_polygon(4)),
              kPi - 2.0, 1e-4);
  EXPECT_EQ(hausdorff_distance(small, small), 0.0);
  EXPECT_NEAR(hausdorff_distance(small, big), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(hausdorff_distance(regular_symmetric_polygon(2048, 1.0), regular_symmetric_polygon(2048, 2.0)), 1.0,
              1e-4);
}

TEST(TextFormat, RoundTripAndComments) {
  const auto p = random_symmetric_polygon(9, 42);
  std::stringstream ss;
  write_polygon(ss, p, "random body");
  const auto q = read_symmetric_polygon(ss);
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(q[i], p[i]);

  std::istringstream bad("# header\n1 0\n0 1 junk\n");
  EXPECT_THROW(read_vertices(bad), std::runtime_error);
}

// Properties over random bodies.

TEST(Properties, BipolarInvolution) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_body(rng);
    const auto pp = polar_dual(polar_dual(p));
    EXPECT_LE(symmetric_difference_area(pp, p), 1e-9 * p.area());
  }
}

TEST(Properties, LinearEquivariance) {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_body(rng);
    const Mat2 phi = testing::random_matrix(rng);
    const Mat2 dual_map = phi.inverse().transpose();
    const auto lhs = polar_dual(linear_image(p, phi));
    const auto rhs = linear_image(polar_dual(p), dual_map);
    ASSERT_EQ(lhs.size(), rhs.size());
    EXPECT_LE(testing::vertex_match_error(lhs.vertices(), rhs.vertices()), 1e-8 * rhs.diameter());
  }
}

TEST(Properties, BlaschkeSantaloProduct) {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_body(rng);
    EXPECT_LE(p.area() * polar_dual(p).area(), kPi * kPi + 1e-9);
  }
  const auto disk = regular_symmetric_polygon(2048);
  EXPECT_NEAR(disk.area() * polar_dual(disk).area(), kPi * kPi, 1e-4);
}

TEST(Properties, ClipAdditivity) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_body(rng);
    const HalfPlane h{unit_vector(2 * kPi * unit(rng)), (2 * unit(rng) - 1) * 0.5 * p.diameter()};
    const double a = clip_halfplane(p, h).area() + clip_halfplane(p, h.complement()).area();
    EXPECT_NEAR(a, p.area(), 1e-10 * std::max(1.0, p.area()));
  }
}

}  // namespace
}  // namespace santalo
