#include <gtest/gtest.h>

#include <cmath>

#include "santalo/bodies.hpp"
#include "test_support.hpp"

namespace santalo {
namespace {

TEST(Gamma, AgreesWithLibraryGamma) {
  for (double x = 1.0; x <= 3.0; x += 1.0 / 64) {
    EXPECT_NEAR(lanczos_gamma(x) / std::tgamma(x), 1.0, 1e-12) << x;
  }
  for (double x : {0.1, 0.5, 4.5, 11.0, 31.0, -0.5, -2.5}) {
    EXPECT_NEAR(lanczos_gamma(x) / std::tgamma(x), 1.0, 1e-11) << x;
  }
  EXPECT_NEAR(lanczos_gamma(0.5), std::sqrt(kPi), 1e-14);
  EXPECT_THROW(lanczos_gamma(0.0), DomainError);
  EXPECT_THROW(lanczos_gamma(-3.0), DomainError);
  EXPECT_THROW(lanczos_gamma(std::nan("")), DomainError);
}

TEST(LpBallArea, ClosedForms) {
  EXPECT_NEAR(lp_ball_area(2.0), kPi, 1e-14);
  EXPECT_NEAR(lp_ball_area(1.0), 2.0, 1e-14);
  const double g = std::tgamma(1.25);
  EXPECT_NEAR(lp_ball_area(4.0), 4 * g * g / std::tgamma(1.5), 1e-13);
  EXPECT_NEAR(lp_ball_area(4.0), 3.7081, 1e-4);
  EXPECT_THROW(lp_ball_area(0.5), DomainError);
}

TEST(LpBallPolygon, Examples) {
  EXPECT_NEAR(lp_ball_polygon({2.0, 2048}).area(), kPi, 1e-5);
  EXPECT_NEAR(lp_ball_polygon({4.0, 2048}).area(), lp_ball_area(4.0), 1e-4);
  EXPECT_THROW(LpBallSpec(1.0, 64), DomainError);
  EXPECT_THROW(LpBallSpec(3.0, 6), DomainError);
  EXPECT_THROW(LpBallSpec(3.0, 65), DomainError);
  // Vertices lie on the unit sphere of the norm.
  for (const auto& v : lp_ball_polygon({3.0, 256}).vertices()) {
    EXPECT_NEAR(std::pow(std::abs(v.x()), 3.0) + std::pow(std::abs(v.y()), 3.0), 1.0, 1e-13);
  }
}

TEST(LpBallPolygon, SecondOrderConvergence) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double exact = lp_ball_area(p);
    const double e1 = exact - lp_ball_polygon({p, 256}).area();
    const double e2 = exact - lp_ball_polygon({p, 1024}).area();
    ASSERT_GT(e1, 0.0);
    ASSERT_GT(e2, 0.0);
    EXPECT_GE(std::log(e1 / e2) / std::log(4.0), 1.9) << "p = " << p;
  }
}

TEST(LpBallPolygon, PolarIsConjugateBall) {
  for (double t : {-0.3, -0.1, 0.1, 0.3}) {
    const double p = 2 + t;
    const double q = (2 + t) / (1 + t);
    EXPECT_NEAR(conjugate_exponent(p), q, 1e-15);
    const auto dual = polar_dual(lp_ball_polygon({p, 4096}));
    const auto target = lp_ball_polygon({q, 4096});
    EXPECT_LE(symmetric_difference_area(dual, target), 5e-3) << "t = " << t;
    // Circumscribed versus inscribed: the exact ball area sits between them.
    EXPECT_GE(dual.area(), lp_ball_area(q) - 1e-12);
    EXPECT_LE(target.area(), lp_ball_area(q));
  }
}

TEST(RandomSymmetricPolygon, Examples) {
  EXPECT_EQ(random_symmetric_polygon(2, 99).size(), 4u);
  for (auto shape : {SampleShape::Disk, SampleShape::Annulus, SampleShape::Box}) {
    const auto a = random_symmetric_polygon(20, 1234, shape);
    const auto b = random_symmetric_polygon(20, 1234, shape);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  }
  EXPECT_THROW(random_symmetric_polygon(1, 0), DomainError);
}

TEST(RandomSymmetricPolygon, ProductBound) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto p = random_symmetric_polygon(2 + seed % 40, seed, static_cast<SampleShape>(seed % 3));
    EXPECT_LE(p.area() * polar_dual(p).area(), kPi * kPi + 1e-9);
  }
}

TEST(HighDim, Examples) {
  const auto h3 = highdim_counterexample(3);
  EXPECT_DOUBLE_EQ(h3.cube_volume, 8.0);
  EXPECT_NEAR(h3.cross_volume, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(h3.ball_volume, 4 * kPi / 3, 1e-13);
  EXPECT_TRUE(h3.sum_exceeds);
  const auto h4 = highdim_counterexample(4);
  EXPECT_DOUBLE_EQ(h4.cube_volume, 16.0);
  EXPECT_NEAR(2 * h4.ball_volume, kPi * kPi, 1e-13);
  EXPECT_TRUE(h4.sum_exceeds);
  EXPECT_TRUE(highdim_counterexample(10).sum_exceeds);
  EXPECT_THROW(highdim_counterexample(2), DomainError);
}

TEST(HighDim, ExceedsForAllDimensions) {
  for (int n = 3; n <= 30; ++n) {
    const auto h = highdim_counterexample(n);
    EXPECT_TRUE(h.sum_exceeds) << n;
    EXPECT_NEAR(h.ball_volume / (std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1)), 1.0, 1e-12);
    EXPECT_NEAR(h.cross_volume / (std::ldexp(1.0, n) / std::tgamma(n + 1.0)), 1.0, 1e-12);
  }
}

TEST(RegularPolygon, Triangle) {
  const auto tri = regular_polygon(3, 1.0);
  EXPECT_NEAR(tri.area(), 3 * std::sqrt(3.0) / 4, 1e-15);
  const double sum = tri.area() + polar_dual(tri).area();
  EXPECT_NEAR(sum, 15 * std::sqrt(3.0) / 4, 1e-12);
  EXPECT_NEAR(sum, 6.49519, 1e-5);
  EXPECT_GT(sum, 2 * kPi);
}

TEST(RegularPolygon, InscribedSquare) {
  const auto sq = regular_symmetric_polygon(4);
  EXPECT_NEAR(sq.area(), 2.0, 1e-15);
  EXPECT_NEAR(polar_dual(sq).area(), 4.0, 1e-14);
  EXPECT_THROW(regular_symmetric_polygon(5), DomainError);
  EXPECT_THROW(regular_polygon(2, 1.0), DomainError);
}

}  // namespace
}  // namespace santalo
