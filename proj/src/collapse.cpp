#include "collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "tropical.hpp"

namespace wpc {

namespace {

Mat random_sym(int n, Rng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

std::uint64_t subkey(std::uint64_t seed, std::uint64_t n) {
  return seed * 0x100000001b3ULL + n + 1;
}

}  // namespace

void validate_spec(const DegenerationSpec& spec) {
  const int g = spec.g;
  if (g < 1 || spec.gprime < 0 || spec.gprime >= g) fail(Errc::BadInput, "bad (g, g')");
  if (spec.L_fixed.rows() != g || spec.L_fixed.cols() != g ||
      spec.X_fixed.rows() != g || spec.X_fixed.cols() != g ||
      static_cast<int>(spec.profiles.size()) != g)
    fail(Errc::DimensionMismatch, "spec blocks must be g x g");
  for (int i = 0; i < g; ++i) {
    if (std::abs(spec.L_fixed(i, i) - 1.0) > 1e-14)
      fail(Errc::BadInput, "L_fixed must be unit lower triangular");
    for (int j = i + 1; j < g; ++j)
      if (spec.L_fixed(i, j) != 0.0) fail(Errc::BadInput, "L_fixed must be lower triangular");
  }
  require_symmetric(spec.X_fixed);
  for (int i = 0; i < g; ++i) {
    if (!(spec.profiles[i].c > 0.0)) fail(Errc::BadInput, "profile coefficients must be positive");
    if (i < spec.gprime && spec.profiles[i].rho != 1.0)
      fail(Errc::BadInput, "indices <= g' must be constant");
    if (i >= spec.gprime && !(spec.profiles[i].rho > 1.0))
      fail(Errc::BadInput, "indices > g' must diverge");
  }
  if (!(spec.u > 1.0)) fail(Errc::BadInput, "u must exceed 1");
}

bool non_degenerate(const DegenerationSpec& spec) {
  for (int i = spec.gprime + 1; i < spec.g; ++i)
    if (spec.profiles[i].rho != spec.profiles[spec.gprime].rho) return false;
  return true;
}

double k_ratio(const DegenerationSpec& spec, int i, int j) {
  if (i <= spec.gprime || j <= spec.gprime || i > spec.g || j > spec.g)
    fail(Errc::BadInput, "k_ij defined for divergent indices");
  if (spec.profiles[i - 1].rho != spec.profiles[j - 1].rho)
    fail(Errc::DegenerateDirection, "ratio has no nonzero limit");
  return spec.profiles[i - 1].c / spec.profiles[j - 1].c;
}

SiegelPoint anchor(const DegenerationSpec& spec) {
  const int gp = spec.gprime;
  Vec d(gp);
  for (int i = 0; i < gp; ++i) d(i) = spec.profiles[i].c;
  Mat lp = spec.L_fixed.topLeftCorner(gp, gp);
  return make_siegel_point(spec.X_fixed.topLeftCorner(gp, gp),
                           lp * d.asDiagonal() * lp.transpose());
}

Mat limit_tbar(const DegenerationSpec& spec) {
  if (!non_degenerate(spec)) fail(Errc::DegenerateDirection, "no nondegenerate limit");
  const int gpp = spec.g - spec.gprime;
  Vec k(gpp);
  for (int i = 0; i < gpp; ++i) k(i) = k_ratio(spec, spec.gprime + 1 + i, spec.g);
  Mat lpp = spec.L_fixed.bottomRightCorner(gpp, gpp);
  return lpp * k.asDiagonal() * lpp.transpose();
}

double d_coord(const DegenerationSpec& spec, int i, int n) {
  return spec.profiles[i].c * std::pow(spec.profiles[i].rho, n);
}

SiegelPoint make_sequence(const DegenerationSpec& spec, int n) {
  validate_spec(spec);
  if (n < 0) fail(Errc::BadInput, "n must be nonnegative");
  Vec d(spec.g);
  for (int i = 0; i < spec.g; ++i) d(i) = d_coord(spec, i, n);
  for (int i = 0; i + 1 < spec.g; ++i)
    if (!(d(i) < spec.u * d(i + 1)))
      fail(Errc::SiegelChainViolated, "d-chain inequality fails at this n");
  Mat y = spec.L_fixed * d.asDiagonal() * spec.L_fixed.transpose();
  return make_siegel_point(spec.X_fixed, 0.5 * (y + y.transpose()));
}

std::vector<BallSample> sample_ball(const SiegelPoint& tau_n, int gprime, double R, int m,
                                    std::uint64_t seed, double u) {
  if (m < 1 || R < 0.0) fail(Errc::BadInput, "need m >= 1, R >= 0");
  BasePoint center = project(tau_n, gprime);
  const int g = tau_n.dim(), gpp = g - gprime;
  FiberBox box = fiber_box(g, u);
  std::vector<BallSample> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i), 0x62616c6cULL);
    BasePoint base = center;
    const double radius = (i == 0) ? 0.0 : rng.uniform(0.0, R);
    if (radius > 0.0) {
      TangentVec vp{random_sym(gprime, rng), random_sym(gprime, rng)};
      Mat w = random_sym(gpp, rng);
      const double a2 = gprime > 0 ? wp_norm_sq(center.tau_prime, vp) : 0.0;
      const double b2 = trwp_norm_sq(center.t, w);
      const double total = std::sqrt(a2 + b2);
      if (total > 0.0) {
        base.t = trwp_geodesic(center.t, w / total, radius);
        if (gprime > 0) {
          // Euler steps of fixed wp-length; path length equals the budget, so
          // the hyperbolic-factor distance cannot exceed it
          double budget = radius * std::sqrt(a2) / total;
          SiegelPoint cur = center.tau_prime;
          while (budget > 1e-14) {
            const double nrm = std::sqrt(wp_norm_sq(cur, vp));
            if (nrm < 1e-14) break;
            const double h = std::min(0.01, budget);
            cur = make_siegel_point(cur.X + (h / nrm) * vp.VX, cur.Y + (h / nrm) * vp.VY);
            budget -= h;
          }
          base.tau_prime = cur;
        }
      }
    }
    FiberCoords f =
        (i == 0) ? fiber_coords(tau_n, gprime) : random_fiber(box, gprime, gpp, rng);
    out.push_back(BallSample{assemble(base, f), base, f});
  }
  return out;
}

DistortionReport measure_distortion(const SiegelPoint& tau_n, int gprime, double R,
                                    const std::vector<BallSample>& samples, double u) {
  DistortionReport rep;
  rep.R = R;
  CollapseBounds cb = collapse_bounds(tau_n, gprime, R, u);
  rep.delta_theory = cb.delta;
  rep.gh_upper_theory = cb.gh_upper;
  rep.lambda_min = lambda_min_sym(project(tau_n, gprime).t);
  JacobiDecomp ldl = jacobi_decompose(tau_n.Y);
  rep.d_gp1 = ldl.d(gprime);
  const int m = static_cast<int>(samples.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      ++rep.pairs;
      const double slack =
          fiber_path_length(assemble(samples[j].base, samples[i].fiber),
                            assemble(samples[j].base, samples[j].fiber), gprime);
      rep.max_slack = std::max(rep.max_slack, slack);
    }
  }
  rep.gh_upper_measured = 0.5 * rep.max_slack;
  return rep;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& series) {
  const int n = static_cast<int>(series.size());
  if (n < 4) fail(Errc::BadInput, "need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [a, v] : series) {
    if (!(a > 0.0) || !(v > 0.0)) fail(Errc::BadInput, "series must be positive");
    const double x = std::log(a), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12 * (n * sxx + sx * sx + 1.0))
    fail(Errc::DegenerateInput, "all abscissae equal");
  RateFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double sst = syy - sy * sy / n;
  double sse = 0.0;
  for (const auto& [a, v] : series) {
    const double e = std::log(v) - (fit.intercept + fit.slope * std::log(a));
    sse += e * e;
  }
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  fit.n_lo = lo;
  fit.n_hi = hi;
  return fit;
}

namespace {

double limit_discrepancy_for(const DegenerationSpec& spec, const SiegelPoint& tau_n, int n,
                             const std::vector<BallSample>& samples, double* tbar_gap) {
  const int gprime = spec.gprime;
  const double dg = d_coord(spec, spec.g - 1, n);
  Mat tbar_inf = limit_tbar(spec);
  Mat tbar_n = project(tau_n, gprime).t / dg;
  if (tbar_gap) *tbar_gap = (tbar_n - tbar_inf).norm();
  Mat s_inf = spd_sqrt(tbar_inf);
  Mat s_n_inv = spd_inv_sqrt(tbar_n);
  const int m = static_cast<int>(samples.size());
  std::vector<BasePoint> limit_pts;
  limit_pts.reserve(m);
  for (const auto& s : samples) {
    Mat disp = spd_log(Mat(s_n_inv * (s.base.t / dg) * s_n_inv));
    Mat t_lim = s_inf * sym_exp(disp) * s_inf;
    limit_pts.push_back(BasePoint{s.base.tau_prime, 0.5 * (t_lim + t_lim.transpose())});
  }
  double disc = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d_base = base_distance(samples[i].base, samples[j].base);
      const double slack =
          fiber_path_length(assemble(samples[j].base, samples[i].fiber),
                            assemble(samples[j].base, samples[j].fiber), gprime);
      const double d_lim = base_distance(limit_pts[i], limit_pts[j]);
      disc = std::max(disc, std::abs(d_base - d_lim));
      disc = std::max(disc, std::abs(d_base + slack - d_lim));
    }
  }
  return disc;
}

}  // namespace

std::vector<LimitRow> limit_compare(const DegenerationSpec& spec, double R,
                                    const std::vector<int>& n_list, int m) {
  if (!non_degenerate(spec)) fail(Errc::DegenerateDirection, "sequence has no product limit");
  std::vector<LimitRow> rows;
  for (int n : n_list) {
    SiegelPoint tau_n = make_sequence(spec, n);
    std::vector<BallSample> samples =
        sample_ball(tau_n, spec.gprime, R, m, subkey(spec.seed, n), spec.u);
    LimitRow row;
    row.n = n;
    row.d_gp1 = d_coord(spec, spec.gprime, n);
    row.discrepancy = limit_discrepancy_for(spec, tau_n, n, samples, &row.tbar_gap);
    rows.push_back(row);
  }
  return rows;
}

ExperimentReport run_experiment(const DegenerationSpec& spec, double R, int m, int n_max,
                                int fiber_samples) {
  validate_spec(spec);
  ExperimentReport rep;
  rep.spec = spec;
  rep.R = R;
  rep.samples = m;
  const bool has_limit = non_degenerate(spec);
  for (int n = 1; n <= n_max; ++n) {
    SiegelPoint tau_n = make_sequence(spec, n);
    BasePoint base = project(tau_n, spec.gprime);
    std::vector<BallSample> samples =
        sample_ball(tau_n, spec.gprime, R, m, subkey(spec.seed, n), spec.u);
    DistortionReport dist = measure_distortion(tau_n, spec.gprime, R, samples, spec.u);
    ExperimentRow row;
    row.n = n;
    row.d_gp1 = dist.d_gp1;
    row.lambda_min = dist.lambda_min;
    row.fiber_diam_upper =
        fiber_diameter_upper(base, spec.gprime, spec.u, fiber_samples, subkey(spec.seed, n));
    row.bound_eq42 = fiber_diameter_bound(base, spec.gprime, spec.u);
    row.max_slack = dist.max_slack;
    row.delta_theory = dist.delta_theory;
    row.gh_upper = dist.gh_upper_theory;
    row.limit_discrepancy =
        has_limit ? limit_discrepancy_for(spec, tau_n, n, samples, nullptr)
                  : std::numeric_limits<double>::quiet_NaN();
    rep.rows.push_back(row);
  }
  std::vector<std::pair<double, double>> s1, s2, s3, s4, s5;
  for (const auto& r : rep.rows) {
    s1.emplace_back(r.d_gp1, r.bound_eq42);
    s2.emplace_back(r.d_gp1, r.gh_upper);
    if (has_limit && r.limit_discrepancy > 0.0) s3.emplace_back(r.d_gp1, r.limit_discrepancy);
    if (r.fiber_diam_upper > 0.0) s4.emplace_back(r.d_gp1, r.fiber_diam_upper);
    if (r.max_slack > 0.0) s5.emplace_back(r.d_gp1, r.max_slack);
  }
  rep.fit_fiber_diam = rate_fit(s1);
  rep.fit_gh_upper = rate_fit(s2);
  if (s3.size() >= 4) rep.fit_limit_disc = rate_fit(s3);
  if (s4.size() >= 4) rep.fit_fiber_diam_measured = rate_fit(s4);
  if (s5.size() >= 4) rep.fit_slack_measured = rate_fit(s5);
  return rep;
}

DegenerationSpec preset_spec(int g, int gprime, double rho) {
  DegenerationSpec spec;
  spec.g = g;
  spec.gprime = gprime;
  spec.L_fixed = Mat::Identity(g, g);
  spec.X_fixed = Mat::Zero(g, g);
  spec.profiles.resize(g);
  for (int i = 0; i < g; ++i) {
    if (i < gprime) {
      spec.profiles[i] = Profile{1.0, 1.0};
    } else {
      spec.profiles[i] = Profile{std::pow(2.0, i - gprime + 1), rho};
    }
  }
  return spec;
}

}  // namespace wpc
