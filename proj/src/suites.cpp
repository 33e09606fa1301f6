#include "suites.hpp"

#include <cmath>

#include "error.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "tropical.hpp"

namespace wpc {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

Mat random_sym(int n, Rng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace

Mat random_spd(int n, Rng& rng) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  Mat p = a * a.transpose() + 0.1 * Mat::Identity(n, n);
  return 0.5 * (p + p.transpose());
}

Mat random_unimodular(int n, Rng& rng) {
  // product of random elementary shears and permutation-ish sign flips
  Mat u = Mat::Identity(n, n);
  for (int k = 0; k < 3 * n; ++k) {
    const int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 1);
    if (i == j) j = (j + 1) % n;
    if (n == 1) break;
    Mat e = Mat::Identity(n, n);
    e(i, j) = static_cast<double>(rng.uniform_int(-2, 2));
    u = u * e;
  }
  if (rng.uniform() < 0.5 && n > 0) u.col(0) *= -1.0;
  return u;
}

SiegelPoint random_siegel_point(int g, Rng& rng) {
  return make_siegel_point(random_sym(g, rng), random_spd(g, rng));
}

TangentVec random_tangent(int g, Rng& rng) {
  return TangentVec{random_sym(g, rng), random_sym(g, rng)};
}

SymplecticMat random_symplectic(int g, Rng& rng) {
  // product of the standard generators: GL-block, shear, and the involution J
  Mat a = Mat::Identity(g, g);
  for (int k = 0; k < 2; ++k) {
    Mat m(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) m(i, j) = rng.normal();
    a = a + 0.3 * m;  // keep well-conditioned
  }
  Mat b1 = 0.5 * random_sym(g, rng), b2 = 0.5 * random_sym(g, rng);
  Mat z = Mat::Zero(g, g), id = Mat::Identity(g, g);
  Mat ainvT = a.inverse().transpose();

  Mat full(2 * g, 2 * g);
  auto block = [&](const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    Mat m(2 * g, 2 * g);
    m.topLeftCorner(g, g) = A;
    m.topRightCorner(g, g) = B;
    m.bottomLeftCorner(g, g) = C;
    m.bottomRightCorner(g, g) = D;
    return m;
  };
  Mat g1 = block(a, z, z, ainvT);
  Mat g2 = block(id, b1, z, id);
  Mat g3 = block(z, -id, id, z);
  Mat g4 = block(id, b2, z, id);
  full = g1 * g2 * g3 * g4;
  return make_symplectic(full);
}

SuiteReport g1_suite() {
  SuiteReport rep;
  rep.name = "g1";
  Rng rng(0x6731ULL);

  // (a) in exponential coordinates (theta, r) with tau = theta + i e^r, the
  // metric is (1/2)(dr^2 + e^{-2r} dtheta^2)
  {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double th = rng.uniform(-2.0, 2.0), r = rng.uniform(-2.0, 2.0);
      const double a = rng.normal(), b = rng.normal();
      SiegelPoint tau = make_siegel_point(Mat::Constant(1, 1, th), Mat::Constant(1, 1, std::exp(r)));
      TangentVec v{Mat::Constant(1, 1, a), Mat::Constant(1, 1, std::exp(r) * b)};
      const double want = 0.5 * (b * b + std::exp(-2.0 * r) * a * a);
      worst = std::max(worst, rel_err(wp_norm_sq(tau, v), want));
    }
    rep.checks.push_back({"coordinate-change identity", worst <= 1e-10, worst, 1e-10, ""});
  }
  // half-half coefficients at r = 0
  {
    SiegelPoint tau = make_siegel_point(Mat::Zero(1, 1), Mat::Identity(1, 1));
    const double cx = wp_norm_sq(tau, TangentVec{Mat::Identity(1, 1), Mat::Zero(1, 1)});
    const double cy = wp_norm_sq(tau, TangentVec{Mat::Zero(1, 1), Mat::Identity(1, 1)});
    const double worst = std::max(rel_err(cx, 0.5), rel_err(cy, 0.5));
    rep.checks.push_back({"coefficients (1/2,1/2) at tau=i", worst <= 1e-12, worst, 1e-12, ""});
  }
  // (b) fiber circle circumference e^{-r}/sqrt(2)
  {
    double worst = 0.0;
    for (double r : {0.5, 2.0, std::log(100.0)}) {
      BasePoint base{make_siegel_point(Mat(0, 0), Mat(0, 0)),
                     Mat::Constant(1, 1, std::exp(r))};
      FiberCoords fp{Mat(0, 1), Mat(0, 1), Mat::Constant(1, 1, -0.5)};
      FiberCoords fq{Mat(0, 1), Mat(0, 1), Mat::Constant(1, 1, 0.5)};
      const double len = fiber_path_length(assemble(base, fp), assemble(base, fq), 0, 2);
      worst = std::max(worst, rel_err(len, std::exp(-r) / kSqrt2));
    }
    rep.checks.push_back({"circumference e^-r/sqrt2", worst <= 1e-10, worst, 1e-10, ""});
  }
  // (c) GH upper bound decay slope -1 in r along tau_n = i e^n
  {
    std::vector<std::pair<double, double>> series;
    for (int n = 1; n <= 10; ++n) {
      SiegelPoint tau_n = make_siegel_point(Mat::Zero(1, 1), Mat::Constant(1, 1, std::exp(double(n))));
      auto samples = sample_ball(tau_n, 0, 0.5, 12, 0x7331ULL + n, 2.0);
      DistortionReport d = measure_distortion(tau_n, 0, 0.5, samples, 2.0);
      series.emplace_back(std::exp(double(n)), d.gh_upper_measured);
    }
    RateFit fit = rate_fit(series);
    const bool ok = std::abs(fit.slope + 1.0) <= 0.05 && fit.r_squared >= 0.99;
    rep.checks.push_back({"GH-upper decay slope -1", ok, fit.slope, -1.0,
                          "r^2=" + std::to_string(fit.r_squared)});
  }
  // (d) renormalization sends t_n to 1 and preserves distances
  {
    std::vector<Mat> ts;
    std::vector<double> ds;
    for (int n = 1; n <= 6; ++n) {
      ts.push_back(Mat::Constant(1, 1, std::exp(double(n))));
      ds.push_back(std::exp(double(n)));
    }
    auto norm = normalize_basepoint(ts, ds);
    double worst = 0.0;
    for (const auto& t : norm) worst = std::max(worst, std::abs(t(0, 0) - 1.0));
    // dividing a pair by a common scalar is an isometry of the cone
    for (size_t i = 0; i + 1 < ts.size(); ++i)
      worst = std::max(worst, std::abs(trwp_distance(Mat(ts[i] / ds[i]), Mat(ts[i + 1] / ds[i])) -
                                       trwp_distance(ts[i], ts[i + 1])));
    rep.checks.push_back({"basepoint renormalization", worst <= 1e-12, worst, 1e-12, ""});
  }
  return rep;
}

namespace {

// chart: tau = [[th1,th2],[th2,th3]] + i L diag(e^r1, e^r2) tL, L = [[1,0],[th4,1]]
SiegelPoint g2_chart(const double* c) {
  Mat x(2, 2);
  x << c[0], c[1], c[1], c[2];
  Mat l(2, 2);
  l << 1.0, 0.0, c[3], 1.0;
  Vec d(2);
  d << std::exp(c[4]), std::exp(c[5]);
  Mat y = l * d.asDiagonal() * l.transpose();
  return make_siegel_point(x, 0.5 * (y + y.transpose()));
}

TangentVec g2_chart_tangent(const double* c, const double* v) {
  Mat dx(2, 2);
  dx << v[0], v[1], v[1], v[2];
  Mat l(2, 2);
  l << 1.0, 0.0, c[3], 1.0;
  Mat dl = Mat::Zero(2, 2);
  dl(1, 0) = v[3];
  Vec d(2);
  d << std::exp(c[4]), std::exp(c[5]);
  Vec dd(2);
  dd << std::exp(c[4]) * v[4], std::exp(c[5]) * v[5];
  Mat dy = dl * d.asDiagonal() * l.transpose() + l * dd.asDiagonal() * l.transpose() +
           l * d.asDiagonal() * dl.transpose();
  return TangentVec{dx, 0.5 * (dy + dy.transpose())};
}

double g2_displayed_form(const double* c, const double* v) {
  const double th4 = c[3], r1 = c[4], r2 = c[5];
  const double e12 = std::exp(r1 - r2);
  const double q = 1.0 + e12 * th4 * th4;
  double s = v[4] * v[4] + v[5] * v[5];
  s += 2.0 * e12 * v[3] * v[3];
  s += q * q * std::exp(-2.0 * r1) * v[0] * v[0];
  s += 2.0 * (1.0 + 2.0 * e12 * th4 * th4) * std::exp(-r1 - r2) * v[1] * v[1];
  s += std::exp(-2.0 * r2) * v[2] * v[2];
  s += -4.0 * th4 * q * std::exp(-r1 - r2) * v[0] * v[1];
  s += 2.0 * th4 * th4 * std::exp(-2.0 * r2) * v[0] * v[2];
  s += -4.0 * th4 * std::exp(-2.0 * r2) * v[1] * v[2];
  return 0.5 * s;
}

}  // namespace

SuiteReport g2_suite() {
  SuiteReport rep;
  rep.name = "g2";
  Rng rng(0x6732ULL);

  // (a) the displayed chart tensor agrees with the matrix-trace metric
  {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      double c[6] = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                     rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 2)};
      double v[6];
      for (double& x : v) x = rng.normal();
      SiegelPoint tau = g2_chart(c);
      const double got = wp_norm_sq(tau, g2_chart_tangent(c, v));
      worst = std::max(worst, rel_err(got, g2_displayed_form(c, v)));
    }
    rep.checks.push_back({"chart tensor identity", worst <= 1e-9, worst, 1e-9, ""});
  }
  // coefficient of dtheta4^2 is e^{r1-r2}
  {
    double c[6] = {0.3, -0.2, 0.7, 0.4, 0.6, 1.9};
    double v[6] = {0, 0, 0, 1, 0, 0};
    const double got = wp_norm_sq(g2_chart(c), g2_chart_tangent(c, v));
    const double worst = rel_err(got, std::exp(c[4] - c[5]));
    rep.checks.push_back({"dtheta4^2 coefficient", worst <= 1e-10, worst, 1e-10, ""});
  }
  // (b) remainder against (1/2) pi^*(hyperbolic + scale) decays like e^{-r2}
  {
    std::vector<std::pair<double, double>> series;
    for (int r2i = 2; r2i <= 12; ++r2i) {
      double sup = 0.0;
      for (int k = 0; k < 20; ++k) {
        double c[6] = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-0.5, 0.5), rng.uniform(0, 1), double(r2i)};
        SiegelPoint tau = g2_chart(c);
        Mat gmat(6, 6), bmat = Mat::Zero(6, 6);
        std::vector<TangentVec> basis;
        for (int i = 0; i < 6; ++i) {
          double v[6] = {0, 0, 0, 0, 0, 0};
          v[i] = 1.0;
          basis.push_back(g2_chart_tangent(c, v));
        }
        for (int i = 0; i < 6; ++i)
          for (int j = i; j < 6; ++j) gmat(i, j) = gmat(j, i) = wp_inner(tau, basis[i], basis[j]);
        bmat(0, 0) = 0.5 * std::exp(-2.0 * c[4]);
        bmat(4, 4) = 0.5;
        bmat(5, 5) = 0.5;
        sup = std::max(sup, (gmat - bmat).cwiseAbs().maxCoeff());
      }
      series.emplace_back(std::exp(double(r2i)), sup);
    }
    RateFit fit = rate_fit(series);
    const bool ok = std::abs(fit.slope + 1.0) <= 0.1 && fit.r_squared >= 0.99;
    rep.checks.push_back({"product-metric remainder decay", ok, fit.slope, -1.0,
                          "r^2=" + std::to_string(fit.r_squared)});
  }
  return rep;
}

SuiteReport properties_suite(std::uint64_t seed) {
  SuiteReport rep;
  rep.name = "properties";
  Rng rng(seed, 0x70726f70ULL);

  // symplectic invariance of the metric
  {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const int g = rng.uniform_int(1, 4);
      SiegelPoint tau = random_siegel_point(g, rng);
      TangentVec v = random_tangent(g, rng);
      SymplecticMat m = random_symplectic(g, rng);
      worst = std::max(worst,
                       rel_err(wp_norm_sq(act(m, tau), push_forward(m, tau, v)),
                               wp_norm_sq(tau, v)));
    }
    rep.checks.push_back({"symplectic invariance", worst <= 1e-9, worst, 1e-9, ""});
  }
  // tropical distance: triangle inequality and unimodular invariance
  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const int r = rng.uniform_int(1, 5);
      Mat p = random_spd(r, rng), q = random_spd(r, rng), s = random_spd(r, rng);
      worst = std::max(worst, trwp_distance(p, q) - trwp_distance(p, s) - trwp_distance(s, q));
      Mat u = random_unimodular(r, rng);
      worst = std::max(worst,
                       std::abs(trwp_distance(u.transpose() * p * u, u.transpose() * q * u) -
                                trwp_distance(p, q)));
    }
    rep.checks.push_back({"tropical triangle/unimodular", worst <= 1e-8, worst, 1e-8, ""});
  }
  // reduction lands in the Siegel set
  {
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
      const int g = rng.uniform_int(1, 5);
      Mat y = random_spd(g, rng);
      ReduceResult red = reduce_spd(y);
      // the scale clause depends on overall scale, which conjugation by a
      // unimodular matrix cannot change; check the two reducible clauses
      SpdMembership mem = spd_membership(red.y_red, 2.0);
      if (!mem.l_ok || !mem.chain_ok) ++bad;
      Mat uf = red.u.cast<double>();
      if ((uf.transpose() * y * uf - red.y_red).norm() > 1e-9 * y.norm()) ++bad;
    }
    rep.checks.push_back({"reduce_spd membership", bad == 0, double(bad), 0.0, ""});
  }
  // 1-Lipschitz submersion
  {
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
      const int g = rng.uniform_int(2, 4);
      const int gp = rng.uniform_int(0, g - 1);
      SiegelPoint tau = random_siegel_point(g, rng);
      TangentVec v = random_tangent(g, rng);
      BaseTangent bt = dpi_pushforward(tau, v, gp);
      if (base_norm_sq(project(tau, gp), bt) > wp_norm_sq(tau, v) * (1.0 + 1e-9)) ++bad;
    }
    rep.checks.push_back({"1-Lipschitz pushforward", bad == 0, double(bad), 0.0, ""});
  }
  // certified vertical bound and lambda lower bound sweeps
  {
    int bad = 0;
    Rng prng(seed, 0x636572ULL);
    for (int k = 0; k < 200; ++k) {
      const int g = prng.uniform_int(2, 4);
      const int gp = prng.uniform_int(0, g - 1);
      SiegelPoint tau = random_siegel_point(g, prng);
      auto basis = vertical_basis(tau, gp);
      TangentVec v{Mat::Zero(g, g), Mat::Zero(g, g)};
      for (const auto& b : basis) {
        const double c = prng.normal();
        v.VX += c * b.VX;
        v.VY += c * b.VY;
      }
      if (vertical_norm_sq(tau, v, gp) > vertical_bound(tau, v, gp)) ++bad;
      Mat y = reduce_spd(random_spd(g, prng)).y_red;
      SiegelPoint red = make_siegel_point(Mat::Zero(g, g), y);
      if (in_siegel_set(red, 2.0)) {
        const double lb = lambda_lower_bound(red, gp, 2.0);
        if (lambda_min_sym(project(red, gp).t) < lb) ++bad;
      }
    }
    rep.checks.push_back({"certified bounds sweep", bad == 0, double(bad), 0.0, ""});
  }
  return rep;
}

}  // namespace wpc
