#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "santalo/bodies.hpp"
#include "santalo/cone.hpp"
#include "santalo/ellipse.hpp"
#include "santalo/extremal_search.hpp"

namespace santalo {

using Json = nlohmann::ordered_json;

enum class Direction { AtMost, AtLeast, Exceeds };

inline std::string to_string(Direction d) {
  switch (d) {
    case Direction::AtMost:
      return "at_most";
    case Direction::AtLeast:
      return "at_least";
    case Direction::Exceeds:
      return "exceeds";
  }
  return {};
}

inline Direction direction_from_string(const std::string& s) {
  if (s == "at_most") return Direction::AtMost;
  if (s == "at_least") return Direction::AtLeast;
  if (s == "exceeds") return Direction::Exceeds;
  throw DomainError("unknown direction '" + s + "'");
}

/// at_most: value <= bound + tolerance; at_least: value >= bound - tolerance;
/// exceeds: value > bound. NaN never passes.
inline bool relation_holds(double value, double bound, double tolerance, Direction d) {
  switch (d) {
    case Direction::AtMost:
      return value <= bound + tolerance;
    case Direction::AtLeast:
      return value >= bound - tolerance;
    case Direction::Exceeds:
      return value > bound;
  }
  return false;
}

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  Direction direction = Direction::AtMost;

  bool passed() const { return relation_holds(value, bound, tolerance, direction); }
};

/// Result of one experiment. The headline fields mirror the first check; the
/// report passes when every check does.
struct ExperimentReport {
  std::string claim_id;
  std::size_t n_samples = 0;
  double worst_value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  Direction direction = Direction::AtMost;
  bool passed = false;
  std::int64_t runtime_ms = 0;
  Json config = Json::object();
  std::vector<Check> checks;
  Json observations = Json::object();

  void add(std::string name, double value, double bound_, double tol, Direction d) {
    checks.push_back({std::move(name), value, bound_, tol, d});
  }

  void finalize() {
    if (checks.empty()) throw DomainError("report has no checks");
    const Check& head = checks.front();
    worst_value = head.value;
    bound = head.bound;
    tolerance = head.tolerance;
    direction = head.direction;
    passed = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

inline Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["bound"] = c.bound;
  j["tolerance"] = c.tolerance;
  j["direction"] = to_string(c.direction);
  j["passed"] = c.passed();
  return j;
}

inline Json to_json(const ExperimentReport& r) {
  Json j;
  j["claim_id"] = r.claim_id;
  j["n_samples"] = r.n_samples;
  j["worst_value"] = r.worst_value;
  j["bound"] = r.bound;
  j["tolerance"] = r.tolerance;
  j["direction"] = to_string(r.direction);
  j["passed"] = r.passed;
  j["runtime_ms"] = r.runtime_ms;
  j["config"] = r.config;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  j["observations"] = r.observations;
  return j;
}

/// Recomputes the pass flag from the numbers stored in a report document.
/// Non-finite numbers are serialized as null and count as failures.
inline bool passed_from_json(const Json& j) {
  auto relation = [](const Json& c) {
    if (!c.at("value").is_number() || !c.at("bound").is_number() || !c.at("tolerance").is_number()) return false;
    return relation_holds(c.at("value").get<double>(), c.at("bound").get<double>(), c.at("tolerance").get<double>(),
                          direction_from_string(c.at("direction").get<std::string>()));
  };
  const auto& checks = j.at("checks");
  if (checks.empty()) return false;
  Json head;
  head["value"] = j.at("worst_value");
  head["bound"] = j.at("bound");
  head["tolerance"] = j.at("tolerance");
  head["direction"] = j.at("direction");
  if (!relation(head)) return false;
  return std::all_of(checks.begin(), checks.end(), relation);
}

struct ExperimentOptions {
  std::size_t samples = 0;  // 0 selects the experiment default
  std::uint64_t seed = 1;
  EllipseKind which = EllipseKind::John;
  std::size_t arc_n = 0;  // 0 selects the experiment default
  FitOptions fit;
  std::size_t search_iterations = 80000;
  unsigned threads = 1;
  /// When non-empty, body experiments evaluate these instead of random samples.
  std::vector<SymmetricPolygon> bodies;
};

/// Extra outputs that do not belong in the report.
struct ExperimentArtifacts {
  std::vector<TraceRow> trace;  // first seed of the extremal search
};

namespace detail {

/// Per-sample seed derived from the master seed and the sample index, so the
/// result does not depend on the worker count.
inline std::uint64_t sample_seed(std::uint64_t master, std::size_t index) {
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Runs fn(index, rng) for every sample on a small worker pool. A sample that
/// throws yields an empty slot.
template <class T, class Fn>
std::vector<std::optional<T>> run_samples(std::size_t n, std::uint64_t master, unsigned threads, Fn fn) {
  std::vector<std::optional<T>> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      std::mt19937_64 rng(sample_seed(master, i));
      try {
        out[i] = fn(i, rng);
      } catch (const std::exception&) {
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

template <class T>
std::size_t count_failures(const std::vector<std::optional<T>>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const auto& x) { return !x.has_value(); }));
}

inline Mat2 rotation(double a) {
  Mat2 r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

/// rotation * diag(s, +-s / ratio) * rotation with scale in [1/5, 5] and ratio in [1, max_ratio].
inline Mat2 sample_linear_map(std::mt19937_64& rng, double max_ratio) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = std::exp(std::log(0.2) + unit(rng) * std::log(25.0));
  const double ratio = std::exp(unit(rng) * std::log(max_ratio));
  Mat2 d = Mat2::Zero();
  d(0, 0) = scale;
  d(1, 1) = scale / ratio * (unit(rng) < 0.5 ? -1.0 : 1.0);
  return rotation(2 * kPi * unit(rng)) * d * rotation(2 * kPi * unit(rng));
}

/// Random polygon with 2 to 64 half vertices drawn from a random shape.
inline SymmetricPolygon sample_body(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> half(2, 64);
  std::uniform_int_distribution<int> shape(0, 2);
  const std::size_t n = half(rng);
  const auto s = static_cast<SampleShape>(shape(rng));
  return random_symmetric_polygon(n, rng(), s);
}

/// Polygon close to an ellipse: a disk with an o-symmetric radial wobble of
/// relative size `amplitude`, mapped by a random linear map.
inline SymmetricPolygon perturbed_ellipse_polygon(std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> half(16, 256);
  const std::size_t m = half(rng);
  std::array<double, 3> coef{}, phase{};
  for (std::size_t h = 0; h < coef.size(); ++h) {
    const double order = static_cast<double>(h + 1);
    coef[h] = amplitude * (2.0 * unit(rng) - 1.0) / (order * order);
    phase[h] = 2 * kPi * unit(rng);
  }
  std::vector<Vec2> pts;
  pts.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = kPi * (static_cast<double>(j) + 0.8 * (unit(rng) - 0.5)) / static_cast<double>(m);
    double r = 1.0;
    for (std::size_t h = 0; h < coef.size(); ++h) r += coef[h] * std::cos(2.0 * static_cast<double>(h + 1) * t + phase[h]);
    pts.push_back(r * unit_vector(t));
  }
  // At large amplitudes the profile is not convex and the hull can keep
  // vertices that are collinear up to rounding; those are dropped.
  const auto hull = make_symmetric_polygon(pts);
  const auto v = hull.vertices();
  const std::size_t n = v.size();
  const double flat = 1e-9 * hull.diameter() * hull.diameter();
  std::vector<Vec2> kept;
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (orient(v[(i + n - 1) % n], v[i], v[i + 1]) > flat) kept.push_back(v[i]);
  }
  return linear_image(make_symmetric_polygon(kept), sample_linear_map(rng, 10.0));
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// |P \ E| and |E \ P| for an ellipse approximated by its inscribed n-gon.
inline std::array<double, 2> ellipse_differences(const SymmetricPolygon& p, const CenteredEllipse& e, std::size_t n) {
  const auto poly = ellipse_polygon(e, n).as_convex();
  const auto body = p.as_convex();
  const double common = intersect(poly, body).area();
  return {std::max(0.0, body.area() - common), std::max(0.0, poly.area() - common)};
}

class Stopwatch {
 public:
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void base_config(ExperimentReport& r, const ExperimentOptions& opt, std::size_t samples) {
  r.n_samples = samples;
  r.config["seed"] = opt.seed;
  r.config["samples"] = samples;
  r.config["threads"] = opt.threads;
  r.config["fit_tol"] = opt.fit.tol;
  r.config["fit_max_iterations"] = opt.fit.max_iterations;
}

inline std::size_t or_default(std::size_t v, std::size_t fallback) { return v == 0 ? fallback : v; }

/// The body for sample i: either a user body or a random one (optionally
/// passed through a random linear map).
inline SymmetricPolygon body_for_sample(const ExperimentOptions& opt, std::size_t i, std::mt19937_64& rng,
                                        double max_ratio) {
  if (!opt.bodies.empty()) return opt.bodies[i];
  auto k = sample_body(rng);
  if (max_ratio > 1.0) k = linear_image(k, sample_linear_map(rng, max_ratio));
  return k;
}

inline std::size_t body_samples(const ExperimentOptions& opt, std::size_t fallback) {
  return opt.bodies.empty() ? or_default(opt.samples, fallback) : opt.bodies.size();
}

}  // namespace detail

/// |K| + |K*| <= 2 pi once the chosen ellipse is the unit disk.
inline ExperimentReport exp_main_theorem(const ExperimentOptions& opt) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "main-theorem";
  const std::size_t n = detail::body_samples(opt, 10000);
  const std::size_t arc_n = detail::or_default(opt.arc_n, 2048);
  detail::base_config(r, opt, n);
  r.config["which"] = to_string(opt.which);
  r.config["arc_n"] = arc_n;

  auto sums = detail::run_samples<double>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    const auto k = normalize(detail::body_for_sample(opt, i, rng, 1.0), opt.which, opt.fit).body;
    return k.area() + polar_dual(k).area();
  });
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : sums) {
    if (s) worst = std::max(worst, *s);
  }
  const auto disk = normalize(regular_symmetric_polygon(arc_n), opt.which, opt.fit).body;
  const double disk_sum = disk.area() + polar_dual(disk).area();

  r.add("max area sum", worst, 2 * kPi, 1e-6, Direction::AtMost);
  r.add("disk polygon area sum (lower)", disk_sum, 2 * kPi, 1e-4, Direction::AtLeast);
  r.add("disk polygon area sum (upper)", disk_sum, 2 * kPi, 1e-6, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(sums)), 0.0, 0.0, Direction::AtMost);
  r.observations["max_area_sum"] = worst;
  r.observations["disk_area_sum"] = disk_sum;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// |K| / (2|E|) + |K*| / (2|E*|) <= 1 without normalization, |E*| = pi^2 / |E|.
inline ExperimentReport exp_corollary(const ExperimentOptions& opt) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "corollary";
  const std::size_t n = detail::body_samples(opt, 10000);
  const std::size_t arc_n = detail::or_default(opt.arc_n, 2048);
  detail::base_config(r, opt, n);
  r.config["which"] = to_string(opt.which);
  r.config["arc_n"] = arc_n;

  auto value = [&](const SymmetricPolygon& k) {
    const double e = fit_ellipse(k, opt.which, opt.fit).ellipse.area();
    return k.area() / (2.0 * e) + polar_dual(k).area() * e / (2.0 * kPi * kPi);
  };
  Mat2 stretch = Mat2::Zero();
  stretch(0, 0) = 5.0;
  stretch(1, 1) = 0.2;
  auto values = detail::run_samples<double>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    if (!opt.bodies.empty()) return value(opt.bodies[i]);
    auto k = detail::sample_body(rng);
    // Odd samples use the fixed anisotropic map diag(5, 1/5) after a rotation.
    const Mat2 phi = i % 2 == 1 ? Mat2(stretch * detail::rotation(std::uniform_real_distribution<double>(0, kPi)(rng)))
                                : detail::sample_linear_map(rng, 100.0);
    return value(linear_image(k, phi));
  });
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) {
    if (v) worst = std::max(worst, *v);
  }
  Mat2 form = Mat2::Zero();
  form(0, 0) = 1.0 / 25.0;
  form(1, 1) = 25.0;
  const double ellipse_value = value(ellipse_polygon(CenteredEllipse(form), arc_n));

  r.add("max normalized sum", worst, 1.0, 1e-6, Direction::AtMost);
  r.add("ellipse polygon value (lower)", ellipse_value, 1.0, 1e-4, Direction::AtLeast);
  r.add("ellipse polygon value (upper)", ellipse_value, 1.0, 1e-6, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(values)), 0.0, 0.0, Direction::AtMost);
  r.observations["ellipse_value"] = ellipse_value;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// pi/4 <= |E_J| / |K| <= 1 and 1 <= |E_L| / |K| <= pi/2, with the square at
/// the outer ends.
inline ExperimentReport exp_behrend(const ExperimentOptions& opt) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "behrend";
  const std::size_t n = detail::body_samples(opt, 1000);
  detail::base_config(r, opt, n);

  auto ratios = [&](const SymmetricPolygon& k) {
    return std::array<double, 2>{john_ellipse(k, opt.fit).ellipse.area() / k.area(),
                                 lowner_ellipse(k, opt.fit).ellipse.area() / k.area()};
  };
  auto values = detail::run_samples<std::array<double, 2>>(
      n, opt.seed, opt.threads,
      [&](std::size_t i, std::mt19937_64& rng) { return ratios(detail::body_for_sample(opt, i, rng, 100.0)); });
  const double inf = std::numeric_limits<double>::infinity();
  std::array<double, 2> lo{inf, inf}, hi{-inf, -inf};
  for (const auto& v : values) {
    if (!v) continue;
    for (int s = 0; s < 2; ++s) {
      lo[s] = std::min(lo[s], (*v)[s]);
      hi[s] = std::max(hi[s], (*v)[s]);
    }
  }
  const auto square = ratios(make_symmetric_polygon({Vec2(1, 1), Vec2(-1, 1)}));

  r.add("min John ratio", lo[0], kPi / 4, 1e-6, Direction::AtLeast);
  r.add("max John ratio", hi[0], 1.0, 1e-6, Direction::AtMost);
  r.add("min Lowner ratio", lo[1], 1.0, 1e-6, Direction::AtLeast);
  r.add("max Lowner ratio", hi[1], kPi / 2, 1e-6, Direction::AtMost);
  r.add("square John ratio error", std::abs(square[0] - kPi / 4), 0.0, 1e-6, Direction::AtMost);
  r.add("square Lowner ratio error", std::abs(square[1] - kPi / 2), 0.0, 1e-6, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(values)), 0.0, 0.0, Direction::AtMost);
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// For bodies with |K| |K*| = (1 - eps) pi^2, eps < 1/2: |K \ E_J| <= 4 |K| sqrt(eps)
/// and |E_L \ K| <= 5 |K| sqrt(eps). Reported values are the excess over the
/// bound, so 0 is the limit.
inline ExperimentReport exp_stability(const ExperimentOptions& opt,
                                      const std::vector<double>& amplitudes = {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3}) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "stability";
  const std::size_t n = detail::body_samples(opt, 1000);
  const std::size_t arc_n = detail::or_default(opt.arc_n, 2048);
  detail::base_config(r, opt, n);
  r.config["arc_n"] = arc_n;
  r.config["amplitudes"] = amplitudes;

  struct Sample {
    double eps;
    double john_excess;
    double lowner_excess;
  };
  auto measure = [&](const SymmetricPolygon& k) {
    const double eps = 1.0 - k.area() * polar_dual(k).area() / (kPi * kPi);
    Sample s{eps, 0.0, 0.0};
    if (!(eps < 0.5)) return s;
    const double root = std::sqrt(std::max(eps, 0.0));
    const auto john = detail::ellipse_differences(k, john_ellipse(k, opt.fit).ellipse, arc_n);
    const auto lowner = detail::ellipse_differences(k, lowner_ellipse(k, opt.fit).ellipse, arc_n);
    s.john_excess = john[0] - 4.0 * k.area() * root;
    s.lowner_excess = lowner[1] - 5.0 * k.area() * root;
    return s;
  };
  auto samples = detail::run_samples<Sample>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    if (!opt.bodies.empty()) return measure(opt.bodies[i]);
    if (i % 2 == 0) return measure(linear_image(detail::sample_body(rng), detail::sample_linear_map(rng, 100.0)));
    return measure(detail::perturbed_ellipse_polygon(rng, amplitudes[(i / 2) % amplitudes.size()]));
  });
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t tested = 0, small = 0;
  double min_eps = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (!s || !(s->eps < 0.5)) continue;
    ++tested;
    if (s->eps < 1e-2) ++small;
    min_eps = std::min(min_eps, s->eps);
    worst = std::max({worst, s->john_excess, s->lowner_excess});
  }

  // Square: eps = 1 - 8 / pi^2 and |K \ E_J| = 4 - pi.
  const auto square = make_symmetric_polygon({Vec2(1, 1), Vec2(-1, 1)});
  const double sq_eps = 1.0 - square.area() * polar_dual(square).area() / (kPi * kPi);
  const double sq_john = detail::ellipse_differences(square, john_ellipse(square, opt.fit).ellipse, arc_n)[0];
  const auto disk = measure(regular_symmetric_polygon(arc_n));

  r.add("max excess over bound", worst, 0.0, 1e-3, Direction::AtMost);
  r.add("square eps error", std::abs(sq_eps - (1.0 - 8.0 / (kPi * kPi))), 0.0, 1e-12, Direction::AtMost);
  r.add("square |K \\ E_J| error", std::abs(sq_john - (4.0 - kPi)), 0.0, 1e-4, Direction::AtMost);
  r.add("square |K \\ E_J| bound", sq_john - 16.0 * std::sqrt(sq_eps), 0.0, 0.0, Direction::AtMost);
  r.add("disk polygon excess", std::max(disk.john_excess, disk.lowner_excess), 0.0, 1e-3, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(samples)), 0.0, 0.0, Direction::AtMost);
  r.observations["tested_samples"] = tested;
  r.observations["samples_eps_below_0.01"] = small;
  r.observations["min_eps"] = min_eps;
  r.observations["square_eps"] = sq_eps;
  r.observations["square_john_difference"] = sq_john;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// K_t = B^2_{2+t}: eps(t) from the closed-form areas, d(t) = |K_t Δ B^2| from
/// polygons. The log-log slopes of d against eps and eps against |t|.
inline ExperimentReport exp_sqrt_eps(const ExperimentOptions& opt,
                                     const std::vector<double>& t_grid = {-0.3, -0.2, -0.12, -0.08, -0.05, -0.03,
                                                                          -0.02, 0.02, 0.03, 0.05, 0.08, 0.12,
                                                                          0.2, 0.3}) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "sqrt-eps";
  const std::size_t arc_n = detail::or_default(opt.arc_n, 8192);
  for (double t : t_grid) {
    if (!(std::abs(t) > 0.0 && std::abs(t) <= 0.3)) throw DomainError("t values must lie in [-0.3, 0.3] without 0");
  }
  r.n_samples = t_grid.size();
  r.config["arc_n"] = arc_n;
  r.config["t_grid"] = t_grid;

  const auto disk = regular_symmetric_polygon(arc_n);
  std::vector<double> log_t, log_eps, log_d;
  Json rows = Json::array();
  for (double t : t_grid) {
    const double p = 2.0 + t;
    const double eps = 1.0 - lp_ball_area(p) * lp_ball_area(conjugate_exponent(p)) / (kPi * kPi);
    const auto kt = lp_ball_polygon(LpBallSpec(p, arc_n));
    const double d = symmetric_difference_area(kt, disk);
    log_t.push_back(std::log(std::abs(t)));
    log_eps.push_back(std::log(eps));
    log_d.push_back(std::log(d));
    rows.push_back({{"t", t}, {"eps", eps}, {"d", d}});
  }
  const double slope_d = detail::fit_slope(log_eps, log_d);
  const double slope_eps = detail::fit_slope(log_t, log_eps);
  r.add("slope of log d vs log eps (lower)", slope_d, 0.4, 0.0, Direction::AtLeast);
  r.add("slope of log d vs log eps (upper)", slope_d, 0.6, 0.0, Direction::AtMost);
  r.add("slope of log eps vs log |t| (lower)", slope_eps, 1.8, 0.0, Direction::AtLeast);
  r.add("slope of log eps vs log |t| (upper)", slope_eps, 2.2, 0.0, Direction::AtMost);
  r.observations["slope_d_vs_eps"] = slope_d;
  r.observations["slope_eps_vs_t"] = slope_eps;
  r.observations["rows"] = rows;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// The inscribed triangle and the cube exceed the bound; the reverse bound
/// |K| + |K*| >= 6 holds for bodies containing or contained in B^2.
inline ExperimentReport exp_counterexamples(const ExperimentOptions& opt) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "counterexamples";
  const std::size_t n = detail::or_default(opt.samples, 1000);
  detail::base_config(r, opt, n);

  const auto tri = regular_polygon(3, 1.0);
  const double tri_sum = tri.area() + polar_dual(tri).area();
  double min_margin = std::numeric_limits<double>::infinity();
  bool all_flags = true;
  for (int d = 3; d <= 30; ++d) {
    const auto c = highdim_counterexample(d);
    min_margin = std::min(min_margin, c.cube_volume + c.cross_volume - 2.0 * c.ball_volume);
    all_flags = all_flags && c.sum_exceeds;
  }
  const auto cube3 = highdim_counterexample(3);

  // Even samples contain B^2 (a circumscribed regular polygon plus outer
  // points), odd samples lie in B^2 and contain o (points on and inside the
  // circle with no angular gap of pi or more).
  auto sums = detail::run_samples<double>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(3, 12);
    std::vector<Vec2> pts;
    if (i % 2 == 0) {
      const std::size_t k = count(rng);
      const double turn = 2 * kPi * unit(rng);
      const double rho = 1.0 / std::cos(kPi / static_cast<double>(k));
      for (std::size_t j = 0; j < k; ++j) pts.push_back(rho * unit_vector(turn + 2 * kPi * static_cast<double>(j) / static_cast<double>(k)));
      const std::size_t extra = count(rng) - 3;
      for (std::size_t j = 0; j < extra; ++j) pts.push_back((1.0 + 2.0 * unit(rng)) * unit_vector(2 * kPi * unit(rng)));
    } else {
      std::vector<double> angles;
      do {
        angles.clear();
        const std::size_t k = count(rng);
        for (std::size_t j = 0; j < k; ++j) angles.push_back(2 * kPi * unit(rng));
        std::sort(angles.begin(), angles.end());
        angles.push_back(angles.front() + 2 * kPi);
      } while ([&] {
        for (std::size_t j = 1; j < angles.size(); ++j) {
          if (angles[j] - angles[j - 1] >= kPi - 1e-3) return true;
        }
        return false;
      }());
      angles.pop_back();
      for (double a : angles) pts.push_back(unit_vector(a));
      const std::size_t extra = count(rng) - 3;
      for (std::size_t j = 0; j < extra; ++j) pts.push_back(std::sqrt(unit(rng)) * unit_vector(2 * kPi * unit(rng)));
    }
    const auto k = ConvexPolygon::hull(pts);
    return k.area() + polar_dual(k).area();
  });
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& s : sums) {
    if (s) lowest = std::min(lowest, *s);
  }
  const double h = std::sqrt(0.5);
  const auto inscribed = make_symmetric_polygon({Vec2(h, h), Vec2(-h, h)});
  const double inscribed_sum = inscribed.area() + polar_dual(inscribed).area();
  const auto circumscribed = make_symmetric_polygon({Vec2(1, 1), Vec2(-1, 1)});
  const double circumscribed_sum = circumscribed.area() + polar_dual(circumscribed).area();

  r.add("triangle sum", tri_sum, 2 * kPi, 0.0, Direction::Exceeds);
  r.add("triangle closed form error", std::abs(tri_sum - 15.0 * std::sqrt(3.0) / 4.0), 0.0, 1e-12, Direction::AtMost);
  r.add("min cube margin for n = 3..30", min_margin, 0.0, 0.0, Direction::Exceeds);
  r.add("cube flags", all_flags ? 1.0 : 0.0, 1.0, 0.0, Direction::AtLeast);
  r.add("cube n = 3 closed form error", std::abs(cube3.cube_volume + cube3.cross_volume - 28.0 / 3.0), 0.0, 1e-12,
        Direction::AtMost);
  r.add("min reverse sum", lowest, 6.0, 1e-6, Direction::AtLeast);
  r.add("inscribed square error", std::abs(inscribed_sum - 6.0), 0.0, 1e-12, Direction::AtMost);
  r.add("circumscribed square error", std::abs(circumscribed_sum - 6.0), 0.0, 1e-12, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(sums)), 0.0, 0.0, Direction::AtMost);
  r.observations["triangle_sum"] = tri_sum;
  r.observations["min_reverse_sum"] = lowest;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// |M| + |M°| <= angle(p, o, q) over random bodies in sectors of the given
/// angles. Values are area_sum - angle.
inline ExperimentReport exp_cone(const ExperimentOptions& opt,
                                 const std::vector<double>& angles = {kPi / 6, kPi / 4, kPi / 3, kPi / 2}) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "cone";
  const std::size_t n = detail::or_default(opt.samples, 10000);
  const std::size_t arc_n = detail::or_default(opt.arc_n, 512);
  for (double a : angles) {
    if (!(a > 0.0 && a <= kPi / 2)) throw DomainError("angles must lie in (0, pi/2]");
  }
  detail::base_config(r, opt, n);
  r.config["angles"] = angles;
  r.config["arc_n"] = arc_n;

  auto gaps = detail::run_samples<double>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> points(1, 40);
    const double angle = angles[i % angles.size()];
    const double turn = 2 * kPi * unit(rng);
    const SectorFrame frame = unit(rng) < 0.5 ? SectorFrame::from_angle(angle, turn)
                                              : SectorFrame(unit_vector(turn + angle), unit_vector(turn));
    return area_sum(random_cone_body(frame, points(rng), rng)) - angle;
  });
  std::vector<double> sorted;
  for (const auto& g : gaps) {
    if (g) sorted.push_back(*g);
  }
  std::sort(sorted.begin(), sorted.end());
  const double worst = sorted.empty() ? std::numeric_limits<double>::quiet_NaN() : sorted.back();
  const SectorFrame orth(Vec2(1, 0), Vec2(0, 1));
  const double disk_gap = kPi / 2 - area_sum(disk_sector_body(orth, arc_n));
  const double deltoid_sum = area_sum(deltoid(orth));

  r.add("max area_sum - angle", worst, 0.0, 1e-6, Direction::AtMost);
  r.add("quarter disk gap", disk_gap, 0.0, 1e-3, Direction::AtMost);
  r.add("quarter disk gap sign", disk_gap, 0.0, 1e-6, Direction::AtLeast);
  r.add("deltoid area sum error", std::abs(deltoid_sum - 1.5), 0.0, 1e-12, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(gaps)), 0.0, 0.0, Direction::AtMost);
  if (!sorted.empty()) {
    r.observations["gap_min"] = -sorted.back();
    r.observations["gap_median"] = -sorted[sorted.size() / 2];
    r.observations["gap_max"] = -sorted.front();
  }
  r.observations["quarter_disk_gap"] = disk_gap;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// The closed-form sector value against polygonal ellipse sectors, its value
/// at 0 and its monotonicity.
inline ExperimentReport exp_sector_formula(const ExperimentOptions& opt) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "sector-formula";
  const std::size_t arc_n = detail::or_default(opt.arc_n, 2048);
  const std::vector<double> ts{0.0, 0.25, 0.5, 0.75, 0.9};
  r.n_samples = ts.size();
  r.config["arc_n"] = arc_n;
  r.config["t_values"] = ts;

  const SectorFrame orth(Vec2(1, 0), Vec2(0, 1));
  double worst = 0.0;
  Json rows = Json::array();
  for (double t : ts) {
    const double closed = extremal_sector_value(t);
    const double poly = area_sum(ellipse_sector_body(t, orth, arc_n));
    worst = std::max(worst, std::abs(closed - poly));
    rows.push_back({{"t", t}, {"closed_form", closed}, {"polygon", poly}});
  }
  double min_drop = std::numeric_limits<double>::infinity();
  for (int j = 0; j + 1 < 1000; ++j) {
    min_drop = std::min(min_drop, extremal_sector_value(j / 1000.0) - extremal_sector_value((j + 1) / 1000.0));
  }
  r.add("max closed form vs polygon", worst, 0.0, 1e-3, Direction::AtMost);
  r.add("f(0) error", std::abs(extremal_sector_value(0.0) - kPi / 2), 0.0, 1e-12, Direction::AtMost);
  r.add("min decrease on grid", min_drop, 0.0, 0.0, Direction::Exceeds);
  r.observations["rows"] = rows;
  r.observations["f_at_0.999"] = extremal_sector_value(0.999);
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// Local search from perturbed arc seeds in the orthogonal frame.
inline ExperimentReport exp_extremal_search(const ExperimentOptions& opt, ExperimentArtifacts* artifacts = nullptr) {
  detail::Stopwatch clock;
  ExperimentReport r;
  r.claim_id = "extremal-search";
  const std::size_t n = detail::or_default(opt.samples, 50);
  detail::base_config(r, opt, n);
  r.config["iterations"] = opt.search_iterations;
  r.config["segments"] = "13..17";
  r.config["amplitude"] = 0.03;

  struct Run {
    bool monotone;
    double peak;
    double final_value;
    double residual;
    double conic;
    std::vector<TraceRow> trace;
  };
  const SectorFrame orth(Vec2(1, 0), Vec2(0, 1));
  auto runs = detail::run_samples<Run>(n, opt.seed, opt.threads, [&](std::size_t i, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> segments(13, 17);
    const std::size_t s = segments(rng);
    const auto seed = perturbed_arc_body(orth, s, 0.03, rng);
    SearchOptions so;
    so.iterations = opt.search_iterations;
    so.seed = rng();
    auto res = local_search(seed, so);
    Run out{true, -std::numeric_limits<double>::infinity(), res.trace.back().area_sum, res.final_residual,
            fit_proper_vertices(res.body).residual, {}};
    for (std::size_t k = 0; k < res.trace.size(); ++k) {
      out.peak = std::max(out.peak, res.trace[k].area_sum);
      if (k > 0 && res.trace[k].area_sum < res.trace[k - 1].area_sum) out.monotone = false;
    }
    if (i == 0) out.trace = std::move(res.trace);
    return out;
  });
  const double converged_residual = 1e-4;
  std::size_t non_monotone = 0, unconverged = 0;
  double peak = -std::numeric_limits<double>::infinity(), best = peak, conic = 0.0;
  for (const auto& run : runs) {
    if (!run) continue;
    if (!run->monotone) ++non_monotone;
    peak = std::max(peak, run->peak);
    best = std::max(best, run->final_value);
    if (run->residual <= converged_residual) {
      conic = std::max(conic, run->conic);
    } else {
      ++unconverged;
    }
  }
  if (artifacts && !runs.empty() && runs.front()) artifacts->trace = runs.front()->trace;

  r.add("max trace value", peak, kPi / 2, 1e-6, Direction::AtMost);
  r.add("non-monotone traces", static_cast<double>(non_monotone), 0.0, 0.0, Direction::AtMost);
  r.add("best gap to pi/2", kPi / 2 - best, 0.0, 1e-3, Direction::AtMost);
  r.add("max conic residual", conic, 0.0, 1e-3, Direction::AtMost);
  r.add("unconverged seeds", static_cast<double>(unconverged), 0.0, 0.0, Direction::AtMost);
  r.add("failed samples", static_cast<double>(detail::count_failures(runs)), 0.0, 0.0, Direction::AtMost);
  r.config["converged_residual"] = converged_residual;
  r.observations["best_final_value"] = best;
  r.finalize();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

struct ExperimentEntry {
  std::string name;
  std::function<ExperimentReport(const ExperimentOptions&, ExperimentArtifacts&)> run;
};

inline const std::vector<ExperimentEntry>& experiment_registry() {
  static const std::vector<ExperimentEntry> entries{
      {"main-theorem", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_main_theorem(o); }},
      {"corollary", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_corollary(o); }},
      {"behrend", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_behrend(o); }},
      {"stability", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_stability(o); }},
      {"sqrt-eps", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_sqrt_eps(o); }},
      {"counterexamples", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_counterexamples(o); }},
      {"cone", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_cone(o); }},
      {"sector-formula", [](const ExperimentOptions& o, ExperimentArtifacts&) { return exp_sector_formula(o); }},
      {"extremal-search", [](const ExperimentOptions& o, ExperimentArtifacts& a) { return exp_extremal_search(o, &a); }},
  };
  return entries;
}

inline const ExperimentEntry* find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace santalo
