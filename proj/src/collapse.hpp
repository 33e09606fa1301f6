#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horo.hpp"

namespace wpc {

// d_i(n) = c * rho^n; rho = 1 for constant profiles
struct Profile {
  double c = 1.0;
  double rho = 1.0;
};

struct DegenerationSpec {
  int g = 2;
  int gprime = 1;
  Mat L_fixed;  // unit lower triangular, g x g
  Mat X_fixed;  // symmetric, g x g
  std::vector<Profile> profiles;
  double u = 2.0;
  std::uint64_t seed = 0;
};

void validate_spec(const DegenerationSpec& spec);
bool non_degenerate(const DegenerationSpec& spec);
// limit of d_i(n)/d_j(n) for divergent indices (requires non-degeneracy)
double k_ratio(const DegenerationSpec& spec, int i, int j);
// anchor tau'_inf: the (constant) base Siegel factor of the sequence
SiegelPoint anchor(const DegenerationSpec& spec);
// normalized limit t-bar_inf = L'' diag(k_{g'+1,g}, ..., 1) tL''
Mat limit_tbar(const DegenerationSpec& spec);

SiegelPoint make_sequence(const DegenerationSpec& spec, int n);
double d_coord(const DegenerationSpec& spec, int i, int n);

struct BallSample {
  SiegelPoint tau;    // assembled total-space point
  BasePoint base;
  FiberCoords fiber;
};

std::vector<BallSample> sample_ball(const SiegelPoint& tau_n, int gprime, double R, int m,
                                    std::uint64_t seed, double u);

struct DistortionReport {
  int n = 0;
  double R = 0.0;
  int pairs = 0;
  double max_slack = 0.0;
  double delta_theory = 0.0;
  double gh_upper_measured = 0.0;
  double gh_upper_theory = 0.0;
  double lambda_min = 0.0;
  double d_gp1 = 0.0;
};

DistortionReport measure_distortion(const SiegelPoint& tau_n, int gprime, double R,
                                    const std::vector<BallSample>& samples, double u);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double n_lo = 0.0, n_hi = 0.0;  // abscissa range of the fit
};

RateFit rate_fit(const std::vector<std::pair<double, double>>& series);

struct LimitRow {
  int n = 0;
  double d_gp1 = 0.0;
  double discrepancy = 0.0;
  double tbar_gap = 0.0;  // ||tbar_n - tbar_inf||_F
};

std::vector<LimitRow> limit_compare(const DegenerationSpec& spec, double R,
                                    const std::vector<int>& n_list, int m);

struct ExperimentRow {
  int n = 0;
  double d_gp1 = 0.0;
  double lambda_min = 0.0;
  double fiber_diam_upper = 0.0;
  double bound_eq42 = 0.0;
  double max_slack = 0.0;
  double delta_theory = 0.0;
  double gh_upper = 0.0;
  double limit_discrepancy = 0.0;
};

struct ExperimentReport {
  DegenerationSpec spec;
  double R = 0.0;
  int samples = 0;
  std::vector<ExperimentRow> rows;
  RateFit fit_fiber_diam;
  RateFit fit_gh_upper;
  RateFit fit_limit_disc;
  RateFit fit_fiber_diam_measured;
  RateFit fit_slack_measured;
};

ExperimentReport run_experiment(const DegenerationSpec& spec, double R, int m, int n_max,
                                int fiber_samples = 8);

// named presets for the default experiment grid
DegenerationSpec preset_spec(int g, int gprime, double rho = 3.0);

}  // namespace wpc
