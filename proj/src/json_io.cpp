#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "error.hpp"

namespace wpc {

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::Io, "matrix must be an array of rows");
  const int r = static_cast<int>(j.size());
  if (r == 0) return Mat(0, 0);
  const int c = static_cast<int>(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[i].size()) != c) fail(Errc::Io, "ragged matrix rows");
    for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Json point_to_json(const SiegelPoint& tau) {
  return Json{{"g", tau.dim()}, {"X", mat_to_json(tau.X)}, {"Y", mat_to_json(tau.Y)}};
}

SiegelPoint point_from_json(const Json& j) {
  Mat x = mat_from_json(j.at("X"));
  Mat y = mat_from_json(j.at("Y"));
  return make_siegel_point(x, y);
}

Json spec_to_json(const DegenerationSpec& spec) {
  Json profiles = Json::array();
  for (const auto& p : spec.profiles) profiles.push_back(Json{{"c", p.c}, {"rho", p.rho}});
  return Json{{"g", spec.g},
              {"gprime", spec.gprime},
              {"L", mat_to_json(spec.L_fixed)},
              {"X", mat_to_json(spec.X_fixed)},
              {"profiles", profiles},
              {"u", spec.u},
              {"seed", spec.seed}};
}

DegenerationSpec spec_from_json(const Json& j) {
  DegenerationSpec spec;
  spec.g = j.at("g").get<int>();
  spec.gprime = j.at("gprime").get<int>();
  spec.L_fixed = j.count("L") ? mat_from_json(j.at("L"))
                              : Mat(Mat::Identity(spec.g, spec.g));
  spec.X_fixed = j.count("X") ? mat_from_json(j.at("X")) : Mat(Mat::Zero(spec.g, spec.g));
  if (j.count("profiles")) {
    for (const auto& p : j.at("profiles"))
      spec.profiles.push_back(Profile{p.at("c").get<double>(), p.at("rho").get<double>()});
  } else {
    spec.profiles = preset_spec(spec.g, spec.gprime, j.value("rho", 3.0)).profiles;
  }
  spec.u = j.value("u", 2.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  validate_spec(spec);
  return spec;
}

Json fit_to_json(const RateFit& fit) {
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared},
              {"n_range", Json::array({fit.n_lo, fit.n_hi})}};
}

Json report_to_json(const ExperimentReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row{{"n", r.n},
             {"d_gp1", r.d_gp1},
             {"lambda_min", r.lambda_min},
             {"fiber_diam_upper", r.fiber_diam_upper},
             {"bound_eq42", r.bound_eq42},
             {"max_slack", r.max_slack},
             {"delta_theory", r.delta_theory},
             {"gh_upper", r.gh_upper}};
    if (std::isnan(r.limit_discrepancy))
      row["limit_discrepancy"] = nullptr;
    else
      row["limit_discrepancy"] = r.limit_discrepancy;
    rows.push_back(row);
  }
  return Json{{"spec", spec_to_json(rep.spec)},
              {"R", rep.R},
              {"samples", rep.samples},
              {"rows", rows},
              {"fits",
               Json{{"fiber_diam", fit_to_json(rep.fit_fiber_diam)},
                    {"gh_upper", fit_to_json(rep.fit_gh_upper)},
                    {"limit_disc", fit_to_json(rep.fit_limit_disc)},
                    {"fiber_diam_measured", fit_to_json(rep.fit_fiber_diam_measured)},
                    {"max_slack_measured", fit_to_json(rep.fit_slack_measured)}}}};
}

std::string render_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_to_csv(const ExperimentReport& rep) {
  std::string out =
      "n,d_gp1,lambda_min,fiber_diam_upper,bound_eq42,max_slack,delta_theory,gh_upper,"
      "limit_discrepancy\n";
  for (const auto& r : rep.rows) {
    out += std::to_string(r.n) + "," + render_double(r.d_gp1) + "," +
           render_double(r.lambda_min) + "," + render_double(r.fiber_diam_upper) + "," +
           render_double(r.bound_eq42) + "," + render_double(r.max_slack) + "," +
           render_double(r.delta_theory) + "," + render_double(r.gh_upper) + "," +
           (std::isnan(r.limit_discrepancy) ? std::string("")
                                            : render_double(r.limit_discrepancy)) +
           "\n";
  }
  return out;
}

Json suite_to_json(const SuiteReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(Json{{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"detail", c.detail}});
  return Json{{"suite", rep.name}, {"pass", rep.all_pass()}, {"checks", checks}};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::Io, "cannot open " + tmp.string());
    out << content;
    if (!out) fail(Errc::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(Errc::Io, "rename failed for " + target.string());
}

}  // namespace wpc
