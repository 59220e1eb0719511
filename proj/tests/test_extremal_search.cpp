#include <gtest/gtest.h>

#include <random>

#include "santalo/extremal_search.hpp"
#include "test_support.hpp"

namespace santalo {
namespace {

const SectorFrame kOrth(Vec2(1, 0), Vec2(0, 1));

// o, p, u, v, w, q with u, v, w consecutive and the ray through v meeting
// [u, w] at parameter 0.370 from u.
ConeBody hexagon_body() {
  return ConeBody::from_polygon(
      kOrth, ConvexPolygon({Vec2(0, 0), Vec2(1, 0), Vec2(0.9, 0.5), Vec2(0.75, 0.78), Vec2(0.2, 0.95), Vec2(0, 1)}));
}

double oracle_area_sum(const ConeBody& m) { return m.area() + testing::relative_polar_area_by_clipping(m); }

TEST(ApplyVariation, AdmissibleMoveImproves) {
  const auto body = hexagon_body();
  const Vec2 u = body.polygon()[2];
  const Vec2 w = body.polygon()[4];
  const Vec2 e = (w - u).normalized();
  const auto moved = apply_variation(body, {3, 0.05 * e, 2, 4});
  EXPECT_NEAR(moved.area(), body.area(), 1e-12);
  EXPECT_GT(area_sum(moved), area_sum(body));
  EXPECT_GT(oracle_area_sum(moved), oracle_area_sum(body));
}

TEST(ApplyVariation, HypothesisFailures) {
  const auto body = hexagon_body();
  const Vec2 u = body.polygon()[2];
  const Vec2 w = body.polygon()[4];
  const Vec2 e = (w - u).normalized();
  EXPECT_THROW(apply_variation(body, {3, Vec2::Zero(), 2, 4}), HypothesisViolated);
  // Past the midpoint: the ray through v~ crosses [u, w] beyond mu.
  const Vec2 mu = 0.5 * (u + w);
  const double full = -cross(body.polygon()[3], mu) / cross(e, mu);
  EXPECT_THROW(apply_variation(body, {3, 1.5 * full * e, 2, 4}), HypothesisViolated);
  // Away from w.
  EXPECT_THROW(apply_variation(body, {3, -0.01 * e, 2, 4}), HypothesisViolated);
  // Not parallel to the chord.
  EXPECT_THROW(apply_variation(body, {3, 0.01 * (e + Vec2(0, 1e-6)), 2, 4}), HypothesisViolated);
  // Not neighbours.
  EXPECT_THROW(apply_variation(body, {3, 0.01 * e, 1, 4}), HypothesisViolated);
  // Moving p.
  EXPECT_THROW(apply_variation(body, {1, 0.01 * Vec2(-1, 1).normalized(), 0, 2}), HypothesisViolated);
  // Fewer than five vertices.
  const auto quad = deltoid(kOrth);
  EXPECT_THROW(apply_variation(quad, {2, Vec2(0.01, 0), 1, 3}), HypothesisViolated);
}

TEST(EquilibriumResiduals, ArcIsBalanced) {
  const auto arc = disk_sector_body(kOrth, 16);
  const auto r = equilibrium_residuals(arc);
  EXPECT_EQ(r.midpoint.size(), 15u);
  EXPECT_EQ(r.support.size(), 14u);
  for (double x : r.midpoint) EXPECT_LE(std::abs(x), 1e-10);
  for (double x : r.support) EXPECT_LE(std::abs(x), 1e-10);
}

TEST(EquilibriumResiduals, PerturbedVertexShows) {
  std::vector<Vec2> pts;
  const double delta = 0.01;
  for (int j = 1; j < 16; ++j) pts.push_back(unit_vector(kPi / 2 * j / 16 + (j == 7 ? delta : 0.0)));
  const auto body = ConeBody::hull(kOrth, pts);
  const auto r = equilibrium_residuals(body);
  ASSERT_EQ(r.midpoint.size(), 15u);
  // Proper vertices start at p, so the moved point is number 7.
  EXPECT_GE(std::abs(r.midpoint[6]), 0.5 * delta);
  EXPECT_LE(std::abs(r.midpoint[0]), 1e-10);
}

TEST(EquilibriumResiduals, ShortChains) {
  const auto tri = ConeBody::hull(kOrth, std::vector<Vec2>{});
  EXPECT_TRUE(equilibrium_residuals(tri).midpoint.empty());
  EXPECT_TRUE(equilibrium_residuals(tri).support.empty());
  const auto one = ConeBody::hull(kOrth, std::vector<Vec2>{Vec2(0.8, 0.8)});
  EXPECT_EQ(equilibrium_residuals(one).midpoint.size(), 1u);
  EXPECT_TRUE(equilibrium_residuals(one).support.empty());
}

TEST(ConicFit, ExactEllipse) {
  Mat2 a;
  a << 2.0, 0.3, 0.3, 1.0;
  std::vector<Vec2> pts;
  for (int j = 0; j < 10; ++j) {
    const Vec2 u = unit_vector(0.15 * j);
    pts.push_back(u / std::sqrt(u.dot(a * u)));
  }
  const auto fit = fit_centered_conic(pts);
  EXPECT_LE((fit.form - a).norm(), 1e-12);
  EXPECT_LE(fit.residual, 1e-12);
  EXPECT_THROW(fit_centered_conic(std::vector<Vec2>(2, Vec2(1, 0))), DomainError);
}

bool nondecreasing(const std::vector<TraceRow>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].area_sum < trace[i - 1].area_sum) return false;
  }
  return true;
}

TEST(LocalSearch, TruncatedPentagonClimbs) {
  const auto seed = truncated_deltoid(kOrth, 0.05);
  SearchOptions opt;
  opt.iterations = 200;
  const auto res = local_search(seed, opt);
  ASSERT_GT(res.accepted, 0u);
  EXPECT_TRUE(nondecreasing(res.trace));
  // The first accepted move lifts the sum.
  std::size_t first = 1;
  while (first < res.trace.size() && res.trace[first].area_sum == res.trace[0].area_sum) ++first;
  ASSERT_LT(first, res.trace.size());
  EXPECT_LE(first, 20u);
  EXPECT_GT(res.trace.back().area_sum, area_sum(seed));
  EXPECT_LE(res.trace.back().area_sum, kPi / 2 + 1e-6);
}

TEST(LocalSearch, QuarterDiskIsNearlyStationary) {
  const auto seed = disk_sector_body(kOrth, 64);
  const double start = area_sum(seed);
  EXPECT_NEAR(start, kPi / 2, 1e-3);
  // Without end refinements no move improves the sum.
  SearchOptions fixed;
  fixed.iterations = 500;
  fixed.vertex_budget = 0;
  const auto still = local_search(seed, fixed);
  EXPECT_EQ(still.accepted, 0u);
  EXPECT_EQ(still.trace.back().area_sum, start);
  // With them the gain is at the level of the discretization error.
  SearchOptions opt;
  opt.iterations = 2000;
  const auto res = local_search(seed, opt);
  EXPECT_LE(res.trace.back().area_sum - start, 1e-4);
  EXPECT_LE(res.trace.back().area_sum, kPi / 2 + 1e-6);
}

TEST(LocalSearch, ConvergesToEllipticalFingerprint) {
  std::mt19937_64 rng(77);
  for (int run = 0; run < 4; ++run) {
    const auto seed = perturbed_arc_body(kOrth, 14, 0.03, rng);
    ASSERT_GT(fit_proper_vertices(seed).residual, 1e-3);
    SearchOptions opt;
    opt.iterations = 80000;
    opt.seed = static_cast<std::uint64_t>(run);
    const auto res = local_search(seed, opt);
    EXPECT_TRUE(nondecreasing(res.trace));
    EXPECT_LE(res.trace.back().area_sum, kPi / 2 + 1e-6);
    EXPECT_LT(res.final_residual, 10 * opt.step);
    EXPECT_LE(res.final_residual, 1e-4);
    EXPECT_LE(fit_proper_vertices(res.body).residual, 1e-3);
    EXPECT_NEAR(res.trace.back().area_sum, kPi / 2, 2e-3);
  }
}

TEST(LocalSearch, DeterministicPerSeed) {
  std::mt19937_64 rng(5);
  const auto seed = perturbed_arc_body(kOrth, 10, 0.03, rng);
  SearchOptions opt;
  opt.iterations = 3000;
  opt.seed = 9;
  const auto a = local_search(seed, opt);
  const auto b = local_search(seed, opt);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].area_sum, b.trace[i].area_sum);
}

TEST(PerturbedArcBody, ValidSymmetricSeeds) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto body = perturbed_arc_body(kOrth, 8 + i % 10, 0.05, rng);
    EXPECT_EQ(body.size(), 8 + i % 10 + 2u);
    EXPECT_LE(hausdorff_distance(body.polygon(), reflect(body.polygon(), kOrth.axis())), 1e-12);
  }
  EXPECT_THROW(perturbed_arc_body(kOrth, 10, 0.2, rng), DomainError);
}

// Properties.

TEST(Properties, MovesPreserveAreaAndImprove) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> angle(0.3, kPi / 2);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int applied = 0;
  for (int i = 0; applied < 500 && i < 5000; ++i) {
    const auto f = SectorFrame::from_angle(angle(rng), 4 * angle(rng));
    const auto m = random_cone_body(f, 4 + i % 20, rng);
    const auto proper = m.proper_vertices();
    if (proper.size() < 3 || m.size() < 5) continue;
    std::uniform_int_distribution<std::size_t> pick(1, proper.size() - 2);
    const std::size_t pos = pick(rng);
    const auto& verts = m.vertices();
    std::size_t a = proper[pos - 1], b = proper[pos + 1];
    const Vec2& v = verts[proper[pos]];
    const double tau = cross(verts[a], v) / cross(v, verts[b] - verts[a]);
    if (tau > 0.5) std::swap(a, b);
    const Vec2 e = (verts[b] - verts[a]).normalized();
    const Vec2 mu = 0.5 * (verts[a] + verts[b]);
    const double full = -cross(v, mu) / cross(e, mu);
    try {
      const auto moved = apply_variation(m, {proper[pos], frac(rng) * full * e, a, b});
      ++applied;
      EXPECT_LE(std::abs(moved.area() - m.area()), 1e-12 * m.area());
      EXPECT_GE(area_sum(moved), area_sum(m) + 1e-14);
      EXPECT_GT(oracle_area_sum(moved), oracle_area_sum(m));
    } catch (const HypothesisViolated&) {
    }
  }
  EXPECT_GE(applied, 500);
}

TEST(Properties, SearchNeverExceedsAngle) {
  std::mt19937_64 rng(82);
  for (double angle : {kPi / 6, kPi / 4, kPi / 3, kPi / 2}) {
    for (int i = 0; i < 3; ++i) {
      const auto f = SectorFrame::from_angle(angle, i * 1.1);
      const auto seed = perturbed_arc_body(f, 8, 0.03, rng);
      SearchOptions opt;
      opt.iterations = 3000;
      opt.seed = static_cast<std::uint64_t>(i);
      opt.symmetrize_every = 0;
      const auto res = local_search(seed, opt);
      for (std::size_t k = 1; k < res.trace.size(); ++k) {
        const double gain = res.trace[k].area_sum - res.trace[k - 1].area_sum;
        EXPECT_TRUE(gain == 0.0 || gain >= 1e-14) << gain;
        EXPECT_LE(res.trace[k].area_sum, angle + 1e-6);
      }
    }
  }
}

}  // namespace
}  // namespace santalo
