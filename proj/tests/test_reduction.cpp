#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reduction.hpp"
#include "rng.hpp"
#include "suites.hpp"
#include "tropical.hpp"

using namespace wpc;

namespace {
SiegelPoint pt(const Mat& x, const Mat& y) { return make_siegel_point(x, y); }
Mat d2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("siegel coordinates") {
  SiegelPoint tau = pt(Mat::Zero(3, 3), Mat::Identity(3, 3));
  SiegelCoords c = siegel_coords(tau);
  CHECK(c.x.norm() == 0.0);
  CHECK((c.l - Mat::Identity(3, 3)).norm() == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(c.d(i) == doctest::Approx(1.0));

  Mat y(2, 2);
  y << 2, 1, 1, 1;
  Mat x(2, 2);
  x << 0.3, -0.1, -0.1, 0.8;
  SiegelCoords c2 = siegel_coords(pt(x, y));
  CHECK(c2.l(1, 0) == doctest::Approx(0.5));
  CHECK(c2.d(0) == doctest::Approx(2.0));
  CHECK(c2.d(1) == doctest::Approx(0.5));
  CHECK((c2.x - x).norm() == 0.0);  // X passes through unchanged

  SiegelPoint back = from_siegel_coords(c2);
  CHECK((back.Y - y).norm() <= 1e-12 * y.norm());
}

TEST_CASE("siegel set membership") {
  CHECK(in_siegel_set(pt(Mat::Zero(1, 1), Mat::Identity(1, 1)), 2.0));
  CHECK(in_siegel_set(pt(Mat::Zero(2, 2), d2(1, 3)), 2.0));
  CHECK(!in_siegel_set(pt(Mat::Zero(2, 2), d2(3, 1)), 2.0));

  CHECK(in_siegel_set_spd(Mat::Identity(4, 4), 2.0));
  CHECK(!in_siegel_set_spd(d2(0.4, 1.0), 2.0));  // scale clause fails
  Mat y(2, 2);
  y << 2, 1, 1, 1;
  CHECK(!in_siegel_set_spd(y, 2.0));  // chain clause fails: d=(2,0.5)
  SpdMembership mem = spd_membership(y, 2.0);
  CHECK(mem.l_ok);
  CHECK(!mem.chain_ok);
  CHECK(mem.scale_ok);
}

TEST_CASE("reduce_spd examples") {
  // already reduced
  Mat y = d2(1.0, 3.0);
  ReduceResult r = reduce_spd(y);
  CHECK((r.y_red - y).norm() == 0.0);
  CHECK(r.u.isIdentity());

  // g=1 trivial
  ReduceResult r1 = reduce_spd(Mat::Constant(1, 1, 7.0));
  CHECK(r1.y_red(0, 0) == 7.0);
  CHECK(r1.u(0, 0) == 1);

  // random unimodular conjugate of diag(1,5)
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    Mat u0 = random_unimodular(2, rng);
    Mat y0 = u0 * d2(1.0, 5.0) * u0.transpose();
    ReduceResult rr = reduce_spd(Mat(0.5 * (y0 + y0.transpose())));
    SpdMembership mem = spd_membership(rr.y_red, 2.0);
    CHECK(mem.l_ok);
    CHECK(mem.chain_ok);
    CHECK(rr.y_red.determinant() == doctest::Approx(5.0));
    Mat uf = rr.u.cast<double>();
    CHECK((uf.transpose() * y0 * uf - rr.y_red).norm() <= 1e-10 * y0.norm());
  }
}

TEST_CASE("reduce_spd idempotence and equivariance") {
  Rng rng(42);
  for (int k = 0; k < 30; ++k) {
    const int g = rng.uniform_int(1, 4);
    Mat y = random_spd(g, rng);
    ReduceResult r = reduce_spd(y);
    ReduceResult again = reduce_spd(r.y_red);
    CHECK(again.u.isIdentity());
    CHECK((again.y_red - r.y_red).norm() <= 1e-12 * r.y_red.norm());

    // conjugate inputs land in the Siegel set with the same invariants; the
    // reduced Gram itself need not match (reduced bases are not unique)
    Mat v = random_unimodular(g, rng);
    Mat y2 = v.transpose() * y * v;
    ReduceResult r2 = reduce_spd(Mat(0.5 * (y2 + y2.transpose())));
    CHECK(std::abs(r2.y_red.determinant() - y.determinant()) <=
          1e-8 * std::abs(y.determinant()));
    SpdMembership mem2 = spd_membership(r2.y_red, 2.0);
    CHECK(mem2.l_ok);
    CHECK(mem2.chain_ok);
    // the shortest-vector invariant agrees across conjugates
    CHECK(flat_metric_coeffs(r.y_red).shortest_len_sq ==
          doctest::Approx(flat_metric_coeffs(r2.y_red).shortest_len_sq).epsilon(1e-9));
  }
}

TEST_CASE("reduce_sl2") {
  Sl2Result id = reduce_sl2(pt(Mat::Zero(1, 1), Mat::Identity(1, 1)));
  CHECK(id.tau_red.Y(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(id.tau_red.X(0, 0)) <= 0.5);

  Sl2Result r = reduce_sl2(pt(Mat::Constant(1, 1, 0.7), Mat::Constant(1, 1, 0.8)));
  const double x = r.tau_red.X(0, 0), y = r.tau_red.Y(0, 0);
  CHECK(std::abs(x) <= 0.5 + 1e-12);
  CHECK(x * x + y * y >= 1.0 - 1e-12);

  // far point: pure translation
  Sl2Result t = reduce_sl2(pt(Mat::Constant(1, 1, 3.2), Mat::Constant(1, 1, 10.0)));
  CHECK(t.tau_red.Y(0, 0) == doctest::Approx(10.0));
  CHECK(t.m.C(0, 0) == 0.0);

  Rng rng(43);
  for (int k = 0; k < 500; ++k) {
    SiegelPoint tau = pt(Mat::Constant(1, 1, rng.uniform(-8, 8)),
                         Mat::Constant(1, 1, std::exp(rng.uniform(-3, 2))));
    Sl2Result res = reduce_sl2(tau);
    CHECK(std::abs(res.tau_red.X(0, 0)) <= 0.5 + 1e-12);
    CHECK(res.tau_red.X(0, 0) * res.tau_red.X(0, 0) +
              res.tau_red.Y(0, 0) * res.tau_red.Y(0, 0) >=
          1.0 - 1e-12);
    SiegelPoint check = act(res.m, tau);
    CHECK((check.X - res.tau_red.X).norm() <= 1e-9 * (1.0 + res.tau_red.X.norm()));
    CHECK((check.Y - res.tau_red.Y).norm() <= 1e-9 * (1.0 + res.tau_red.Y.norm()));
  }
}

TEST_CASE("deep neighborhood") {
  CHECK(deep_neighborhood(pt(Mat::Zero(2, 2), d2(1, 100)), 1, 50.0));
  CHECK(!deep_neighborhood(pt(Mat::Zero(2, 2), d2(1, 100)), 1, 200.0));
  CHECK(!deep_neighborhood(pt(Mat::Zero(3, 3), Mat::Identity(3, 3)), 2, 1.0));
}

TEST_CASE("convergence criterion from coordinates") {
  // d_{g'+1} -> infinity iff the sequence leaves every compact set of the fiber
  for (int n = 0; n < 8; ++n) {
    Mat y = d2(1.0, std::pow(3.0, n + 1));
    SiegelCoords c = siegel_coords(pt(Mat::Zero(2, 2), y));
    CHECK(c.d(1) == doctest::Approx(std::pow(3.0, n + 1)));
  }
}
