#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horo.hpp"
#include "oracles.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "suites.hpp"
#include "tropical.hpp"

using namespace wpc;

namespace {
Mat d2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
SiegelPoint imag_pt(const Mat& y) { return make_siegel_point(Mat::Zero(y.rows(), y.cols()), y); }
}  // namespace

TEST_CASE("projection and blocks") {
  // block-diagonal: base is just the corner blocks
  BasePoint b = project(imag_pt(Mat::Identity(3, 3)), 1);
  CHECK(b.tau_prime.dim() == 1);
  CHECK(b.tau_prime.Y(0, 0) == doctest::Approx(1.0));
  CHECK((b.t - Mat::Identity(2, 2)).norm() == 0.0);

  // Schur complement with coupling: t = 3 - 1^2/1 = 2
  Mat y(2, 2);
  y << 1, 1, 1, 3;
  BasePoint b2 = project(imag_pt(y), 1);
  CHECK(b2.t(0, 0) == doctest::Approx(2.0));

  Mat y3 = Mat::Zero(2, 2);
  y3(0, 0) = 1;
  y3(0, 1) = y3(1, 0) = 2;
  y3(1, 1) = 5;
  CHECK(project(imag_pt(y3), 1).t(0, 0) == doctest::Approx(1.0));

  // assemble inverts (project, fiber_coords)
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    SiegelPoint tau = random_siegel_point(3, rng);
    for (int gp = 0; gp <= 2; ++gp) {
      SiegelPoint back = assemble(project(tau, gp), fiber_coords(tau, gp));
      CHECK((back.X - tau.X).norm() <= 1e-10 * (1 + tau.X.norm()));
      CHECK((back.Y - tau.Y).norm() <= 1e-10 * tau.Y.norm());
    }
  }
}

TEST_CASE("conjugator identities") {
  CHECK(conjugator_identities(imag_pt(Mat::Identity(3, 3)), 1) == doctest::Approx(0.0));
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    SiegelPoint tau = random_siegel_point(3, rng);
    CHECK(conjugator_identities(tau, 1) <= 1e-11 * tau.Y.norm());
    CHECK(conjugator_identities(tau, 2) <= 1e-11 * tau.Y.norm());
  }
}

TEST_CASE("differential of the projection") {
  // at a block-diagonal point the pushforward reads off (V', V''_Y)
  SiegelPoint tau = imag_pt(Mat::Identity(3, 3));
  Rng rng(13);
  TangentVec v = random_tangent(3, rng);
  BaseTangent w = dpi_pushforward(tau, v, 1);
  CHECK((w.v_prime.VX - v.VX.topLeftCorner(1, 1)).norm() <= 1e-12);
  CHECK((w.v_prime.VY - v.VY.topLeftCorner(1, 1)).norm() <= 1e-12);
  CHECK((w.w - v.VY.bottomRightCorner(2, 2)).norm() <= 1e-12);

  // finite-difference oracle at general points
  for (int k = 0; k < 15; ++k) {
    SiegelPoint p = random_siegel_point(3, rng);
    TangentVec dir = random_tangent(3, rng);
    for (int gp = 1; gp <= 2; ++gp) {
      BaseTangent exact = dpi_pushforward(p, dir, gp);
      BaseTangent fd = testing::fd_pushforward(p, dir, gp, 1e-5);
      const double scale = 1.0 + dir.VX.norm() + dir.VY.norm();
      CHECK((exact.v_prime.VY - fd.v_prime.VY).norm() <= 1e-5 * scale);
      CHECK((exact.w - fd.w).norm() <= 1e-5 * scale);
    }
  }
}

TEST_CASE("vertical subspace") {
  SiegelPoint tau = imag_pt(Mat::Identity(3, 3));
  TangentVec v;
  v.VX = Mat::Zero(3, 3);
  v.VY = Mat::Zero(3, 3);
  v.VX(1, 2) = v.VX(2, 1) = 1.0;  // X'' direction
  CHECK(is_vertical(tau, v, 1, 1e-9));

  TangentVec h;
  h.VX = Mat::Zero(3, 3);
  h.VY = Mat::Zero(3, 3);
  h.VY(0, 0) = 1.0;  // base direction
  CHECK(!is_vertical(tau, h, 1, 1e-9));

  // at coupled points a Y''' move needs a compensating Y'' component
  Mat y(2, 2);
  y << 1, 1, 1, 3;
  SiegelPoint tauc = imag_pt(y);
  TangentVec vy3;
  vy3.VX = Mat::Zero(2, 2);
  vy3.VY = Mat::Zero(2, 2);
  vy3.VY(0, 1) = vy3.VY(1, 0) = 1.0;
  CHECK(!is_vertical(tauc, vy3, 1, 1e-9));
  vy3.VY(1, 1) = 2.0;  // d/ds (t) = VY'' - 2 Y''' VY''' / Y' = 2 - 2 = 0
  CHECK(is_vertical(tauc, vy3, 1, 1e-9));

  // basis: right count, all vertical, independent
  Rng rng(14);
  for (int k = 0; k < 10; ++k) {
    SiegelPoint p = random_siegel_point(3, rng);
    for (int gp = 0; gp <= 2; ++gp) {
      auto basis = vertical_basis(p, gp);
      const int gpp = 3 - gp;
      CHECK(int(basis.size()) == 2 * gp * gpp + gpp * (gpp + 1) / 2);
      for (const auto& b : basis) CHECK(is_vertical(p, b, gp, 1e-8));
    }
  }
}

TEST_CASE("vertical norm") {
  // at diag basepoints the restricted metric is the flat model
  SiegelPoint tau = imag_pt(Mat::Identity(2, 2));
  TangentVec v;
  v.VX = Mat::Zero(2, 2);
  v.VY = Mat::Zero(2, 2);
  const double a = 0.7, b = -0.4, c = 1.3;
  v.VX(0, 1) = v.VX(1, 0) = a;
  v.VY(0, 1) = v.VY(1, 0) = b;
  v.VX(1, 1) = c;
  CHECK(vertical_norm_sq(tau, v, 1) == doctest::Approx(a * a + b * b + 0.5 * c * c));

  // vertical norm agrees with the ambient norm on vertical vectors
  Rng rng(15);
  for (int k = 0; k < 40; ++k) {
    SiegelPoint p = random_siegel_point(3, rng);
    for (int gp = 0; gp <= 2; ++gp) {
      auto basis = vertical_basis(p, gp);
      TangentVec w;
      w.VX = Mat::Zero(3, 3);
      w.VY = Mat::Zero(3, 3);
      for (const auto& e : basis) {
        const double coef = rng.normal();
        w.VX += coef * e.VX;
        w.VY += coef * e.VY;
      }
      const double amb = wp_norm_sq(p, w);
      CHECK(vertical_norm_sq(p, w, gp) == doctest::Approx(amb).epsilon(1e-9));
      CHECK(vertical_bound(p, w, gp) >= amb * (1 - 1e-9));
    }
  }
}

TEST_CASE("horizontal part") {
  Rng rng(16);
  for (int k = 0; k < 30; ++k) {
    SiegelPoint p = random_siegel_point(3, rng);
    TangentVec v = random_tangent(3, rng);
    for (int gp = 0; gp <= 2; ++gp) {
      TangentVec h = horizontal_part(p, v, gp);
      // orthogonal to every vertical basis vector
      for (const auto& e : vertical_basis(p, gp)) {
        CHECK(std::abs(wp_inner(p, h, e)) <= 1e-7 * (1 + std::sqrt(wp_norm_sq(p, v))));
      }
      // difference is vertical
      TangentVec diff;
      diff.VX = v.VX - h.VX;
      diff.VY = v.VY - h.VY;
      CHECK(is_vertical(p, diff, gp, 1e-6));
      // pushforward norm matches the horizontal norm (submersion property)
      BaseTangent w = dpi_pushforward(p, v, gp);
      CHECK(base_norm_sq(project(p, gp), w) ==
            doctest::Approx(wp_norm_sq(p, h)).epsilon(1e-7));
      CHECK(base_norm_sq(project(p, gp), w) <= wp_norm_sq(p, v) * (1 + 1e-9));
    }
  }
}

TEST_CASE("fiber path length") {
  SiegelPoint tau = imag_pt(Mat::Identity(2, 2));
  CHECK(fiber_path_length(tau, tau, 1) == doctest::Approx(0.0));

  // a pure X'' displacement over base (i, t = I): length |dx| / sqrt(2)
  SiegelPoint q = tau;
  q.X(1, 1) = 0.6;
  CHECK(fiber_path_length(tau, q, 1, 256) == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-6));

  // scaling t by lambda shrinks a pure X'' segment like lambda^{-1}
  SiegelPoint tl = imag_pt(d2(1.0, 16.0));
  SiegelPoint ql = tl;
  ql.X(1, 1) = 0.6;
  CHECK(fiber_path_length(tl, ql, 1, 256) ==
        doctest::Approx(0.6 / std::sqrt(2.0) / 16.0).epsilon(1e-6));

  // mismatch of base points is rejected
  SiegelPoint other = imag_pt(d2(2.0, 1.0));
  CHECK_THROWS_AS(fiber_path_length(tau, other, 1), Error);

  // path length bounds the true distance from above
  Rng rng(17);
  for (int k = 0; k < 8; ++k) {
    SiegelPoint p = random_siegel_point(2, rng);
    FiberCoords f = fiber_coords(p, 1);
    f.XPP(0, 0) += 0.3;
    f.XPPP(0, 0) -= 0.2;
    f.YPPP(0, 0) += 0.1;
    SiegelPoint p2 = assemble(project(p, 1), f);
    const double upper = fiber_path_length(p, p2, 1, 128);
    const double opt = testing::path_length_min(p, p2);
    CHECK(opt <= upper * (1 + 1e-6));
  }
}

TEST_CASE("fiber diameter") {
  FiberBox box = fiber_box(3, 2.0);
  CHECK(box.hx2 == doctest::Approx(0.5));
  CHECK(box.hx3 == doctest::Approx(0.5));
  CHECK(box.hy3 == doctest::Approx(2.0 * (1.0 + 2.0 * 3.0)));

  // g'=0, g=1: the fiber is the circle R/Z with flat length e^{-r} dx / sqrt 2
  // at t = e^r; the sampled maximum over the box hits the full sweep e^{-r}/sqrt 2,
  // within a factor 2 of the true torus diameter e^{-r} / (2 sqrt 2)
  for (double r : {2.0, 4.0, 6.0}) {
    BasePoint base;
    base.tau_prime = make_siegel_point(Mat::Zero(0, 0), Mat::Zero(0, 0));
    base.t = Mat::Constant(1, 1, std::exp(r));
    const double truth = std::exp(-r) / (2.0 * std::sqrt(2.0));
    const double measured = fiber_diameter_upper(base, 0, 2.0, 8, 5);
    CHECK(measured >= truth * (1 - 1e-9));
    CHECK(measured <= 2.0 * truth * (1 + 1e-6));
    CHECK(fiber_diameter_bound(base, 0, 2.0) >= measured * (1 - 1e-9));
  }

  // bound decays like lambda^{-1/2} once lambda >= 1
  BasePoint b1;
  b1.tau_prime = make_siegel_point(Mat::Zero(1, 1), Mat::Identity(1, 1));
  b1.t = d2(4.0, 8.0);
  BasePoint b2 = b1;
  b2.t = d2(16.0, 32.0);
  CHECK(fiber_diameter_bound(b1, 1, 2.0) / fiber_diameter_bound(b2, 1, 2.0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // measured sample diameter never exceeds the certified bound
  Rng rng(18);
  for (int k = 0; k < 5; ++k) {
    BasePoint base;
    base.tau_prime = random_siegel_point(1, rng);
    Mat t0 = random_spd(2, rng);
    base.t = t0 + 5.0 * Mat::Identity(2, 2);
    const double measured = fiber_diameter_upper(base, 1, 2.0, 6, 1000 + k);
    const double certified = fiber_diameter_bound(base, 1, 2.0);
    CHECK(measured <= certified * (1 + 1e-9));
    CHECK(measured > 0.0);
  }
}

TEST_CASE("lambda lower bound") {
  // block diagonal with L'' = I: bound equals d_min exactly up to the margin
  SiegelPoint tau = imag_pt(Mat(Mat::Identity(3, 3) * 1.0));
  tau.Y(1, 1) = 9.0;
  tau.Y(2, 2) = 25.0;
  const double lb = lambda_lower_bound(tau, 1, 2.0);
  CHECK(lb == doctest::Approx(9.0 / (1 + 1e-6)));
  CHECK(lb <= lambda_min_sym(project(tau, 1).t));

  Mat y(2, 2);
  y << 1, 1, 1, 5;
  SiegelPoint t2 = imag_pt(y);
  CHECK(lambda_lower_bound(t2, 1, 2.0) <= project(t2, 1).t(0, 0) + 1e-12);

  Rng rng(19);
  for (int k = 0; k < 50; ++k) {
    SiegelPoint p = random_siegel_point(3, rng);
    Mat yr = reduce_spd(p.Y).y_red;
    // rescale so the scale clause 1 < u d_1 holds; bound needs full membership
    yr *= 2.0 / jacobi_decompose(yr).d(0);
    SiegelPoint red = make_siegel_point(Mat::Zero(3, 3), yr);
    for (int gp = 0; gp <= 2; ++gp) {
      const double bound = lambda_lower_bound(red, gp, 2.0);
      const double actual = lambda_min_sym(project(red, gp).t);
      CHECK(bound <= actual * (1 + 1e-12));
      CHECK(bound > 0.0);
    }
  }
}

TEST_CASE("collapse bounds") {
  // R = 0: the window collapses to the point value up to the safety factor
  SiegelPoint tau = imag_pt(d2(1.0, 100.0));
  CollapseBounds cb0 = collapse_bounds(tau, 1, 0.0, 2.0);
  CHECK(cb0.lambda_lo == doctest::Approx(100.0).epsilon(1e-5));
  CHECK(cb0.lambda_hi == doctest::Approx(100.0).epsilon(1e-5));
  CHECK(cb0.gh_upper == doctest::Approx(cb0.delta / 2.0));

  // scaling t by 4 halves delta
  SiegelPoint tau4 = imag_pt(d2(1.0, 400.0));
  CollapseBounds cb4 = collapse_bounds(tau4, 1, 0.5, 2.0);
  CollapseBounds cb1 = collapse_bounds(tau, 1, 0.5, 2.0);
  CHECK(cb1.delta / cb4.delta == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(cb1.gh_upper / cb4.gh_upper == doctest::Approx(2.0).epsilon(1e-9));

  // not deep enough: the certified window would dip below 1
  SiegelPoint shallow = imag_pt(d2(1.0, 1.5));
  CHECK_THROWS_AS(collapse_bounds(shallow, 1, 2.0, 2.0), Error);
}
