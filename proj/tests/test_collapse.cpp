#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "collapse.hpp"
#include "suites.hpp"

using namespace wpc;

TEST_CASE("degeneration sequences") {
  DegenerationSpec spec = preset_spec(2, 1);
  validate_spec(spec);
  CHECK(non_degenerate(spec));

  // n = 0 gives the profile constants on the diagonal
  SiegelPoint tau0 = make_sequence(spec, 0);
  CHECK(tau0.Y(0, 0) == doctest::Approx(spec.profiles[0].c));
  CHECK(tau0.Y(1, 1) == doctest::Approx(spec.profiles[1].c));
  CHECK(tau0.X.norm() == 0.0);

  // divergent coordinates grow geometrically
  for (int n = 0; n < 5; ++n) {
    CHECK(d_coord(spec, 1, n) ==
          doctest::Approx(spec.profiles[1].c * std::pow(spec.profiles[1].rho, n)));
  }

  // g = 3, g' = 1 preset: two divergent profiles with ratio limit 1/2
  DegenerationSpec s3 = preset_spec(3, 1);
  CHECK(non_degenerate(s3));
  CHECK(k_ratio(s3, 2, 3) == doctest::Approx(0.5));
  Mat tbar = limit_tbar(s3);
  CHECK(tbar(0, 0) == doctest::Approx(0.5));
  CHECK(tbar(1, 1) == doctest::Approx(1.0));
  CHECK(tbar(0, 1) == doctest::Approx(0.0));

  // unequal growth rates among the divergent block break non-degeneracy
  DegenerationSpec bad = s3;
  bad.profiles[2].rho = 4.0;
  CHECK(!non_degenerate(bad));
  CHECK_THROWS_AS(limit_tbar(bad), Error);

  DegenerationSpec invalid = spec;
  invalid.profiles[0].c = -1.0;
  CHECK_THROWS_AS(validate_spec(invalid), Error);
}

TEST_CASE("ball sampling") {
  DegenerationSpec spec = preset_spec(2, 1);
  SiegelPoint tau = make_sequence(spec, 4);

  // m = 1 or R = 0 returns the basepoint itself
  auto one = sample_ball(tau, spec.gprime, 0.5, 1, 0, spec.u);
  REQUIRE(one.size() == 1);
  CHECK((one[0].tau.Y - tau.Y).norm() <= 1e-12 * tau.Y.norm());

  const double R = 0.75;
  auto samples = sample_ball(tau, spec.gprime, R, 12, 7, spec.u);
  REQUIRE(samples.size() == 12);
  BasePoint center = project(tau, spec.gprime);
  for (const auto& s : samples) {
    CHECK(base_distance(center, s.base) <= R * (1 + 1e-6));
    // assembled point is consistent with its recorded base and fiber
    SiegelPoint re = assemble(s.base, s.fiber);
    CHECK((re.Y - s.tau.Y).norm() <= 1e-10 * s.tau.Y.norm());
  }

  // reproducibility: same seed, bit-identical output
  auto again = sample_ball(tau, spec.gprime, R, 12, 7, spec.u);
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK((samples[i].tau.X - again[i].tau.X).norm() == 0.0);
    CHECK((samples[i].tau.Y - again[i].tau.Y).norm() == 0.0);
  }
}

TEST_CASE("distortion measurement") {
  DegenerationSpec spec = preset_spec(2, 1);
  for (int n : {3, 5}) {
    SiegelPoint tau = make_sequence(spec, n);
    auto samples = sample_ball(tau, spec.gprime, 0.5, 10, 3, spec.u);
    DistortionReport rep = measure_distortion(tau, spec.gprime, 0.5, samples, spec.u);
    CHECK(rep.pairs == 45);
    CHECK(rep.max_slack >= 0.0);
    CHECK(rep.max_slack <= rep.delta_theory * (1 + 1e-9));
    CHECK(rep.gh_upper_measured <= rep.gh_upper_theory * (1 + 1e-9));
    CHECK(rep.lambda_min == doctest::Approx(d_coord(spec, 1, n)).epsilon(1e-9));
  }
}

TEST_CASE("rate fitting") {
  std::vector<std::pair<double, double>> half, one;
  for (int n = 1; n <= 10; ++n) {
    const double x = std::pow(2.0, n);
    half.emplace_back(x, 3.0 / std::sqrt(x));
    one.emplace_back(x, 0.7 / x);
  }
  RateFit fh = rate_fit(half);
  CHECK(fh.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fh.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(fh.intercept) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rate_fit(one).slope == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(rate_fit({{1.0, 1.0}}), Error);
  CHECK_THROWS_AS(rate_fit({{1.0, 1.0}, {2.0, 0.0}}), Error);
}

TEST_CASE("limit comparison") {
  DegenerationSpec spec = preset_spec(3, 1);
  auto rows = limit_compare(spec, 0.5, {2, 4, 6, 8}, 8);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    // the normalized basepoint is constant along this family
    CHECK(r.tbar_gap <= 1e-12);
    CHECK(r.discrepancy >= 0.0);
  }
  // discrepancy shrinks as the collapse deepens
  CHECK(rows.back().discrepancy < rows.front().discrepancy);

  DegenerationSpec bad = spec;
  bad.profiles[2].rho = 4.0;
  CHECK_THROWS_AS(limit_compare(bad, 0.5, {2}, 4), Error);
}

TEST_CASE("experiment runs") {
  DegenerationSpec spec = preset_spec(2, 1);
  ExperimentReport rep = run_experiment(spec, 0.5, 8, 6, 4);
  REQUIRE(int(rep.rows.size()) == 6);
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].d_gp1 < rep.rows[i + 1].d_gp1);
    CHECK(rep.rows[i].gh_upper > rep.rows[i + 1].gh_upper);
  }
  for (const auto& row : rep.rows) {
    CHECK(row.fiber_diam_upper <= row.bound_eq42 * (1 + 1e-9));
    CHECK(row.max_slack <= row.delta_theory * (1 + 1e-9));
    CHECK(row.gh_upper == doctest::Approx(row.delta_theory / 2.0));
  }
  // certified series decay at exactly the -1/2 rate in lambda
  CHECK(rep.fit_fiber_diam.slope == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(rep.fit_fiber_diam.r_squared >= 1 - 1e-12);
  CHECK(rep.fit_gh_upper.slope == doctest::Approx(-0.5).epsilon(1e-9));

  // reproducibility end to end
  ExperimentReport rep2 = run_experiment(spec, 0.5, 8, 6, 4);
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].max_slack == rep2.rows[i].max_slack);
    CHECK(rep.rows[i].fiber_diam_upper == rep2.rows[i].fiber_diam_upper);
  }
}

TEST_CASE("suites") {
  SuiteReport g1 = g1_suite();
  for (const auto& c : g1.checks) {
    INFO(c.name, ": ", c.value, " vs ", c.bound, " ", c.detail);
    CHECK(c.pass);
  }
  SuiteReport g2 = g2_suite();
  for (const auto& c : g2.checks) {
    INFO(c.name, ": ", c.value, " vs ", c.bound, " ", c.detail);
    CHECK(c.pass);
  }
  SuiteReport props = properties_suite(0);
  for (const auto& c : props.checks) {
    INFO(c.name, ": ", c.value, " vs ", c.bound, " ", c.detail);
    CHECK(c.pass);
  }
}
