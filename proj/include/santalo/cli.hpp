#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "santalo/experiments.hpp"
#include "santalo/polygon_io.hpp"

namespace santalo {

namespace detail {

inline Json form_json(const CenteredEllipse& e) {
  return {{"a11", e.form()(0, 0)}, {"a12", e.form()(0, 1)}, {"a22", e.form()(1, 1)}};
}

/// Summary of one body: areas, both ellipses and the derived quantities.
inline Json inspect_body(const SymmetricPolygon& k, const FitOptions& fit) {
  const auto polar = polar_dual(k);
  const auto john = john_ellipse(k, fit);
  const auto lowner = lowner_ellipse(k, fit);
  const auto nj = normalize(k, EllipseKind::John, fit).body;
  const auto nl = normalize(k, EllipseKind::Lowner, fit).body;
  Json j;
  j["vertices"] = k.size();
  j["area"] = k.area();
  j["polar_area"] = polar.area();
  j["volume_product"] = k.area() * polar.area();
  j["eps"] = 1.0 - k.area() * polar.area() / (kPi * kPi);
  j["john"] = form_json(john.ellipse);
  j["lowner"] = form_json(lowner.ellipse);
  j["john_ratio"] = john.ellipse.area() / k.area();
  j["lowner_ratio"] = lowner.ellipse.area() / k.area();
  j["area_sum_john_normalized"] = nj.area() + polar_dual(nj).area();
  j["area_sum_lowner_normalized"] = nl.area() + polar_dual(nl).area();
  return j;
}

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,area,polar_area,area_sum,max_residual\n" << std::setprecision(17);
  for (const auto& r : trace) {
    out << r.iteration << ',' << r.area << ',' << r.polar_area << ',' << r.area_sum << ',' << r.max_residual << '\n';
  }
}

inline bool accepts_bodies(const std::string& name) {
  return name == "main-theorem" || name == "corollary" || name == "behrend" || name == "stability";
}

}  // namespace detail

/// santalo <experiment> [options]. Exit code 0 when the experiment passes,
/// 1 when it fails and 2 on usage or input errors. `inspect` and `polar`
/// work on --body and always exit 0 on success.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar volume-sum experiments"};
  std::vector<std::string> names;
  for (const auto& e : experiment_registry()) names.push_back(e.name);
  names.push_back("inspect");
  names.push_back("polar");

  std::string experiment;
  ExperimentOptions opt;
  std::string which = "john";
  std::string out_path, csv_path, body_path;
  app.add_option("experiment", experiment, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--samples", opt.samples, "Sample count (0: experiment default)");
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--which", which, "Ellipse used for normalization")->check(CLI::IsMember({"john", "lowner"}));
  app.add_option("--arc-n", opt.arc_n, "Vertex count of disk and ellipse polygons (0: experiment default)");
  app.add_option("--tol", opt.fit.tol, "Ellipse fit tolerance")->check(CLI::Range(1e-15, 1e-2));
  app.add_option("--max-iter", opt.fit.max_iterations, "Ellipse fit iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--iterations", opt.search_iterations, "Local search iterations per seed");
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--out", out_path, "Write the report (or polygon) here instead of stdout");
  app.add_option("--csv", csv_path, "Write the first local search trace as CSV");
  app.add_option("--body", body_path, "Polygon file, one 'x y' vertex per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  opt.which = which == "john" ? EllipseKind::John : EllipseKind::Lowner;

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      out << text;
      return true;
    }
    std::ofstream f(out_path);
    if (!(f << text)) {
      err << "cannot write " << out_path << '\n';
      return false;
    }
    return true;
  };

  try {
    if (!body_path.empty()) {
      std::ifstream f(body_path);
      if (!f) {
        err << "cannot read " << body_path << '\n';
        return 2;
      }
      opt.bodies.push_back(read_symmetric_polygon(f));
    }
    if (experiment == "inspect" || experiment == "polar") {
      if (opt.bodies.empty()) {
        err << experiment << " needs --body\n";
        return 2;
      }
      if (experiment == "inspect") return emit(detail::inspect_body(opt.bodies[0], opt.fit).dump(2) + "\n") ? 0 : 2;
      std::ostringstream s;
      write_polygon(s, polar_dual(opt.bodies[0]), "polar body");
      return emit(s.str()) ? 0 : 2;
    }
    if (!opt.bodies.empty() && !detail::accepts_bodies(experiment)) {
      err << experiment << " does not take --body\n";
      return 2;
    }
    if (!csv_path.empty() && experiment != "extremal-search") {
      err << "--csv applies to extremal-search only\n";
      return 2;
    }
    ExperimentArtifacts artifacts;
    const ExperimentReport report = find_experiment(experiment)->run(opt, artifacts);
    if (!csv_path.empty()) {
      std::ofstream f(csv_path);
      detail::write_trace_csv(f, artifacts.trace);
      if (!f) {
        err << "cannot write " << csv_path << '\n';
        return 2;
      }
    }
    if (!emit(to_json(report).dump(2) + "\n")) return 2;
    if (!out_path.empty()) {
      err << report.claim_id << ": " << (report.passed ? "PASS" : "FAIL") << " (" << report.runtime_ms << " ms)\n";
    }
    return report.passed ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace santalo
