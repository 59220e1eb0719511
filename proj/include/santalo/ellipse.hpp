#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "santalo/symmetric_polygon.hpp"

namespace santalo {

/// The o-symmetric ellipse {x : x^T A x <= 1} for a symmetric positive
/// definite form A.
class CenteredEllipse {
 public:
  explicit CenteredEllipse(const Mat2& form) {
    const double scale = form.cwiseAbs().maxCoeff();
    if (!form.allFinite() || std::abs(form(0, 1) - form(1, 0)) > 1e-12 * scale) {
      throw DomainError("ellipse form must be symmetric");
    }
    form_ = 0.5 * (form + form.transpose());
    Eigen::SelfAdjointEigenSolver<Mat2> es(form_);
    if (!(es.eigenvalues()(0) > 0.0)) throw DomainError("ellipse form must be positive definite");
  }

  static CenteredEllipse unit_disk() { return CenteredEllipse(Mat2::Identity()); }

  const Mat2& form() const { return form_; }
  double area() const { return kPi / std::sqrt(form_.determinant()); }

  /// The polar ellipse, with form A^{-1}.
  CenteredEllipse polar() const { return CenteredEllipse(form_.inverse()); }

  /// Phi with E = Phi B^2 (the symmetric choice A^{-1/2}).
  Mat2 shape() const { return spd_inv_sqrt(form_); }

  /// sqrt(x^T A x); at most 1 exactly on E.
  double gauge(const Vec2& x) const { return std::sqrt(x.dot(form_ * x)); }

  /// max over E of <x, u>.
  double support(const Vec2& u) const { return std::sqrt(u.dot(form_.inverse() * u)); }

  /// Ratio of the long to the short half-axis.
  double aspect_ratio() const {
    Eigen::SelfAdjointEigenSolver<Mat2> es(form_);
    return std::sqrt(es.eigenvalues()(1) / es.eigenvalues()(0));
  }

  CenteredEllipse transformed(const Mat2& phi) const {
    const Mat2 inv = phi.inverse();
    return CenteredEllipse(inv.transpose() * form_ * inv);
  }

 private:
  Mat2 form_;
};

enum class EllipseKind { John, Lowner };

inline std::string to_string(EllipseKind k) { return k == EllipseKind::John ? "john" : "lowner"; }

/// Contact points witnessing sum c_i u_i u_i^T = I in the frame where the
/// fitted ellipse is the unit disk. Points come in antipodal pairs.
struct JohnCertificate {
  std::vector<Vec2> contact_points;  // unit vectors, normalized frame
  std::vector<Vec2> touch_points;    // the same contacts in original coordinates
  std::vector<double> weights;
  double residual = 0.0;             // || sum c_i u_i u_i^T - I ||_F
  std::size_t iterations = 0;
};

struct EllipseFit {
  CenteredEllipse ellipse;
  JohnCertificate certificate;
};

struct FitOptions {
  double tol = 1e-7;
  std::size_t max_iterations = 1'000'000;
};

namespace detail {

struct DesignResult {
  std::vector<double> weights;
  Mat2 moment;
  std::size_t iterations = 0;
};

/// Warm start for the design: a log-barrier Newton path for
/// min -log det A subject to y_i^T A y_i <= 1, in coordinates where the
/// uniform design has identity moment. Design weights are invariant under
/// linear maps, so the normalized multipliers mu / (1 - y_i^T A y_i) carry
/// over to the original points. Returns the Newton steps taken, which count
/// against the iteration cap.
inline std::size_t barrier_warm_start(std::span<const Vec2> pts, const Mat2& m0, const FitOptions& opt,
                                      std::vector<double>& w) {
  const std::size_t m = pts.size();
  const Mat2 white = spd_inv_sqrt(m0);
  std::vector<Eigen::Vector3d> c(m);
  double rmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 y = white * pts[i];
    c[i] = Eigen::Vector3d(y.x() * y.x(), 2.0 * y.x() * y.y(), y.y() * y.y());
    rmax = std::max(rmax, y.squaredNorm());
  }
  std::vector<double> slack(m);
  auto value = [&](const Eigen::Vector3d& x, double mu, double& f) {
    const double det = x(0) * x(2) - x(1) * x(1);
    if (!(det > 0.0 && x(0) > 0.0)) return false;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = 1.0 - c[i].dot(x);
      if (!(s > 0.0)) return false;
      sum += std::log(s);
    }
    f = -std::log(det) - mu * sum;
    return true;
  };
  Eigen::Vector3d x(1.0 / (1.5 * rmax), 0.0, 1.0 / (1.5 * rmax));
  const double mu_end = 1e-2 * opt.tol / static_cast<double>(m);
  std::size_t steps = 0;
  double mu = 1.0;
  for (;;) {
    for (int k = 0; k < 60; ++k) {
      if (++steps >= opt.max_iterations) {
        throw NoConvergence("ellipse fit did not converge in " + std::to_string(opt.max_iterations) + " iterations");
      }
      const double det = x(0) * x(2) - x(1) * x(1);
      const Eigen::Vector3d dd(x(2), -2.0 * x(1), x(0));
      Eigen::Matrix3d d2 = Eigen::Matrix3d::Zero();
      d2(0, 2) = d2(2, 0) = 1.0;
      d2(1, 1) = -2.0;
      Eigen::Vector3d grad = -dd / det;
      Eigen::Matrix3d hess = dd * dd.transpose() / (det * det) - d2 / det;
      for (std::size_t i = 0; i < m; ++i) {
        slack[i] = 1.0 - c[i].dot(x);
        grad += mu * c[i] / slack[i];
        hess += mu * c[i] * c[i].transpose() / (slack[i] * slack[i]);
      }
      const Eigen::Vector3d dx = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(dx);
      if (!(decrement > 1e-14)) break;
      double f0 = 0.0;
      value(x, mu, f0);
      double t = 1.0, f1 = 0.0;
      int halvings = 0;
      while (!value(x + t * dx, mu, f1) || f1 > f0 - 0.25 * t * decrement) {
        t *= 0.5;
        if (++halvings > 60) break;
      }
      if (halvings > 60) break;
      x += t * dx;
    }
    if (mu <= mu_end) break;
    mu = std::max(0.1 * mu, mu_end);
  }
  double total = 0.0, top = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = mu / std::max(1.0 - c[i].dot(x), std::numeric_limits<double>::min());
    top = std::max(top, w[i]);
  }
  for (auto& v : w) {
    if (v < 1e-9 * top) v = 0.0;
    total += v;
  }
  for (auto& v : w) v /= total;
  return steps;
}

/// Centered D-optimal design on points in the plane: maximize log det of
/// M = sum w_i v_i v_i^T over the simplex. Frank-Wolfe with away steps from
/// the barrier warm start; stops when every v^T M^{-1} v <= 2(1 + tol) and
/// every supported one >= 2(1 - tol).
inline DesignResult centered_d_optimal_design(std::span<const Vec2> pts, const FitOptions& opt) {
  const std::size_t m = pts.size();
  if (m < 2) throw DegenerateBody("design needs at least two points");
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  std::vector<double> g(m);
  auto moment = [&] {
    Mat2 mm = Mat2::Zero();
    for (std::size_t i = 0; i < m; ++i) mm += w[i] * pts[i] * pts[i].transpose();
    return mm;
  };
  const Mat2 m0 = moment();
  {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m0);
    if (!(es.eigenvalues()(0) > 1e-24 * es.eigenvalues()(1))) {
      throw DegenerateBody("points span fewer than two dimensions");
    }
  }
  std::size_t it = 0;
  if (m > 3) it = barrier_warm_start(pts, m0, opt, w);
  for (; it < opt.max_iterations; ++it) {
    const Mat2 mm = moment();
    const double det = mm.determinant();
    if (!(det > 0.0)) throw DegenerateBody("design moment became singular");
    const Mat2 inv = mm.inverse();
    std::size_t jmax = 0, jmin = m;
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = pts[i].dot(inv * pts[i]);
      if (g[i] > g[jmax]) jmax = i;
      if (w[i] > 0.0 && (jmin == m || g[i] < g[jmin])) jmin = i;
    }
    const double eps_plus = g[jmax] / 2.0 - 1.0;
    const double eps_minus = 1.0 - g[jmin] / 2.0;
    if (eps_plus <= opt.tol && eps_minus <= opt.tol) return {std::move(w), mm, it};
    if (eps_plus >= eps_minus) {
      const double kappa = g[jmax];
      const double tau = (kappa - 2.0) / (2.0 * (kappa - 1.0));
      for (auto& x : w) x *= 1.0 - tau;
      w[jmax] += tau;
    } else {
      const double kappa = g[jmin];
      const double lower = -w[jmin] / (1.0 - w[jmin]);
      double tau = lower;
      if (kappa > 1.0) tau = std::max((kappa - 2.0) / (2.0 * (kappa - 1.0)), lower);
      for (auto& x : w) x *= 1.0 - tau;
      w[jmin] += tau;
      if (tau == lower || w[jmin] < 0.0) w[jmin] = 0.0;
    }
  }
  throw NoConvergence("ellipse fit did not converge in " + std::to_string(opt.max_iterations) + " iterations");
}

/// Reduces a positive combination of rank-one forms u u^T to at most three
/// terms with the same sum (Caratheodory in the 3-dimensional space of
/// symmetric 2x2 matrices).
inline void caratheodory_reduce(std::vector<Vec2>& u, std::vector<double>& c, std::vector<std::size_t>& tag) {
  while (u.size() > 3) {
    const std::size_t k = u.size();
    Eigen::MatrixXd z(3, static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      z(0, col) = u[i].x() * u[i].x();
      z(1, col) = u[i].x() * u[i].y();
      z(2, col) = u[i].y() * u[i].y();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(z);
    Eigen::VectorXd null = lu.kernel().col(0);
    if (null.maxCoeff() <= 0.0) null = -null;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double zi = null(static_cast<Eigen::Index>(i));
      if (zi > 0.0) theta = std::min(theta, c[i] / zi);
    }
    std::vector<Vec2> nu;
    std::vector<double> nc;
    std::vector<std::size_t> nt;
    const double cmax = *std::max_element(c.begin(), c.end());
    bool dropped = false;
    for (std::size_t i = 0; i < k; ++i) {
      const double ci = c[i] - theta * null(static_cast<Eigen::Index>(i));
      if (ci > 1e-14 * cmax) {
        nu.push_back(u[i]);
        nc.push_back(ci);
        nt.push_back(tag[i]);
      } else {
        dropped = true;
      }
    }
    if (!dropped) break;
    u = std::move(nu);
    c = std::move(nc);
    tag = std::move(nt);
  }
}

inline Mat2 rank_one_sum(std::span<const Vec2> u, std::span<const double> c) {
  Mat2 s = Mat2::Zero();
  for (std::size_t i = 0; i < u.size(); ++i) s += c[i] * u[i] * u[i].transpose();
  return s;
}

/// Certificate for the unit ellipse of `form` from the design weights on
/// half-vertices `pts`. `touch` maps a half-vertex to its boundary contact in
/// original coordinates.
template <class TouchFn>
JohnCertificate build_certificate(std::span<const Vec2> pts, std::span<const double> weights, const Mat2& form,
                                  TouchFn touch) {
  const Mat2 root = spd_sqrt(form);
  std::vector<Vec2> u;
  std::vector<double> c;
  std::vector<std::size_t> source;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const Vec2 y = root * pts[i];
    u.push_back(y.normalized());
    c.push_back(2.0 * weights[i] * y.squaredNorm());
    source.push_back(i);
  }
  caratheodory_reduce(u, c, source);
  const double cmax = *std::max_element(c.begin(), c.end());
  std::vector<Vec2> keep_u;
  std::vector<double> keep_c;
  std::vector<std::size_t> keep_src;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (c[i] > 1e-6 * cmax) {
      keep_u.push_back(u[i]);
      keep_c.push_back(c[i]);
      keep_src.push_back(source[i]);
    }
  }
  const Mat2 s = rank_one_sum(keep_u, keep_c);
  const double scale = s.trace() / s.squaredNorm();
  JohnCertificate cert;
  for (std::size_t i = 0; i < keep_u.size(); ++i) {
    const Vec2 t = touch(pts[keep_src[i]]);
    for (int sign : {1, -1}) {
      cert.contact_points.push_back(sign * keep_u[i]);
      cert.touch_points.push_back(sign * t);
      cert.weights.push_back(0.5 * scale * keep_c[i]);
    }
  }
  cert.residual = (scale * s - Mat2::Identity()).norm();
  return cert;
}

inline void check_aspect(const CenteredEllipse& e) {
  if (e.aspect_ratio() > 1e6) throw DegenerateBody("body is too elongated (aspect ratio above 1e6)");
}

}  // namespace detail

/// Minimum-area ellipse containing P. The returned form is rescaled so that
/// every vertex satisfies x^T A x <= 1 with equality at the farthest vertex.
inline EllipseFit lowner_ellipse(const SymmetricPolygon& p, const FitOptions& opt = {}) {
  if (!(opt.tol > 0.0 && opt.tol <= 1e-2)) throw DomainError("fit tolerance must lie in (0, 1e-2]");
  const auto pts = p.half();
  auto design = detail::centered_d_optimal_design(pts, opt);
  Mat2 form = (2.0 * design.moment).inverse();
  form = 0.5 * (form + form.transpose());
  double rho = 0.0;
  for (const auto& v : pts) rho = std::max(rho, v.dot(form * v));
  form /= rho;
  CenteredEllipse ellipse(form);
  detail::check_aspect(ellipse);
  auto cert = detail::build_certificate(pts, design.weights, form, [](const Vec2& v) { return v; });
  cert.iterations = design.iterations;
  return {ellipse, std::move(cert)};
}

/// Maximum-area ellipse inscribed in P, computed as the polar of the Lowner
/// ellipse of the polar body.
inline EllipseFit john_ellipse(const SymmetricPolygon& p, const FitOptions& opt = {}) {
  if (!(opt.tol > 0.0 && opt.tol <= 1e-2)) throw DomainError("fit tolerance must lie in (0, 1e-2]");
  const SymmetricPolygon dual = polar_dual(p);
  const auto pts = dual.half();
  auto design = detail::centered_d_optimal_design(pts, opt);
  Mat2 lowner_form = (2.0 * design.moment).inverse();
  lowner_form = 0.5 * (lowner_form + lowner_form.transpose());
  double rho = 0.0;
  for (const auto& w : pts) rho = std::max(rho, w.dot(lowner_form * w));
  lowner_form /= rho;
  CenteredEllipse ellipse(lowner_form.inverse());
  detail::check_aspect(ellipse);
  // The edge line <x, w> = 1 touches the inscribed ellipse at A_L w / sqrt(w^T A_L w).
  auto cert = detail::build_certificate(pts, design.weights, lowner_form, [&](const Vec2& w) -> Vec2 {
    return lowner_form * w / std::sqrt(w.dot(lowner_form * w));
  });
  cert.iterations = design.iterations;
  return {ellipse, std::move(cert)};
}

inline EllipseFit fit_ellipse(const SymmetricPolygon& p, EllipseKind kind, const FitOptions& opt = {}) {
  return kind == EllipseKind::John ? john_ellipse(p, opt) : lowner_ellipse(p, opt);
}

struct Normalization {
  SymmetricPolygon body;  // Phi^{-1} P
  Mat2 phi;               // chosen ellipse = Phi B^2
};

/// Maps P so that its John (or Lowner) ellipse becomes the unit disk.
inline Normalization normalize(const SymmetricPolygon& p, EllipseKind kind, const FitOptions& opt = {}) {
  const auto fit = fit_ellipse(p, kind, opt);
  const Mat2 phi = fit.ellipse.shape();
  return {linear_image(p, spd_sqrt(fit.ellipse.form())), phi};
}

/// Polygon inscribed in E with vertices Phi (cos t_j, sin t_j), t_j = 2 pi j / n.
inline SymmetricPolygon ellipse_polygon(const CenteredEllipse& e, std::size_t n) {
  if (n < 4 || n % 2 != 0) throw DomainError("ellipse polygon needs an even vertex count >= 4");
  const Mat2 phi = e.shape();
  std::vector<Vec2> v(n);
  const std::size_t m = n / 2;
  for (std::size_t j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    v[j] = phi * unit_vector(t);
    v[j + m] = -v[j];
  }
  return SymmetricPolygon::from_vertices(std::move(v));
}

}  // namespace santalo
