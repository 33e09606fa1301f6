#include "siegel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

namespace wpc {

using Cx = std::complex<double>;

CMat SiegelPoint::complex() const {
  return X.cast<Cx>() + Cx(0.0, 1.0) * Y.cast<Cx>();
}

SiegelPoint make_siegel_point(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    fail(Errc::DimensionMismatch, "X and Y dimensions differ");
  SiegelPoint p;
  p.X = require_symmetric(x);
  p.Y = require_symmetric(y);
  require_spd(p.Y);
  return p;
}

Mat SymplecticMat::full() const {
  const int g = genus();
  Mat m(2 * g, 2 * g);
  m << A, B, C, D;
  return m;
}

bool is_symplectic(const Mat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    fail(Errc::DimensionMismatch, "symplectic candidate must be square of even dimension");
  const int g = static_cast<int>(m.rows()) / 2;
  Mat j = Mat::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = Mat::Identity(g, g);
  j.bottomLeftCorner(g, g) = -Mat::Identity(g, g);
  return (m.transpose() * j * m - j).norm() <= tol * (1.0 + m.norm() * m.norm());
}

SymplecticMat make_symplectic(const Mat& m, double tol) {
  if (!is_symplectic(m, tol)) fail(Errc::BadInput, "matrix fails the symplectic relation");
  const int g = static_cast<int>(m.rows()) / 2;
  SymplecticMat s;
  s.A = m.topLeftCorner(g, g);
  s.B = m.topRightCorner(g, g);
  s.C = m.bottomLeftCorner(g, g);
  s.D = m.bottomRightCorner(g, g);
  return s;
}

namespace {

CMat action_denominator(const SymplecticMat& m, const SiegelPoint& tau) {
  CMat den = m.C.cast<Cx>() * tau.complex() + m.D.cast<Cx>();
  Eigen::JacobiSVD<CMat> svd(den);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12)
    fail(Errc::NumericallySingular, "C tau + D is numerically singular");
  return den;
}

}  // namespace

SiegelPoint act(const SymplecticMat& m, const SiegelPoint& tau) {
  if (m.genus() != tau.dim()) fail(Errc::DimensionMismatch, "genus mismatch in action");
  CMat den = action_denominator(m, tau);
  CMat num = m.A.cast<Cx>() * tau.complex() + m.B.cast<Cx>();
  CMat res = num * den.inverse();
  res = 0.5 * (res + res.transpose()).eval();  // symmetric in exact arithmetic
  return make_siegel_point(res.real(), res.imag());
}

TangentVec push_forward(const SymplecticMat& m, const SiegelPoint& tau, const TangentVec& v) {
  if (m.genus() != tau.dim() || v.dim() != tau.dim())
    fail(Errc::DimensionMismatch, "genus mismatch in push_forward");
  CMat den_inv = action_denominator(m, tau).inverse();
  CMat vc = v.VX.cast<Cx>() + Cx(0.0, 1.0) * v.VY.cast<Cx>();
  CMat w = den_inv.transpose() * vc * den_inv;
  w = 0.5 * (w + w.transpose()).eval();
  return TangentVec{w.real(), w.imag()};
}

double wp_norm_sq(const SiegelPoint& tau, const TangentVec& v) {
  return wp_inner(tau, v, v);
}

double wp_inner(const SiegelPoint& tau, const TangentVec& v, const TangentVec& w) {
  if (v.dim() != tau.dim() || w.dim() != tau.dim())
    fail(Errc::DimensionMismatch, "tangent dimension mismatch");
  if (tau.dim() == 0) return 0.0;
  Mat yinv = tau.Y.inverse();
  return 0.5 * ((yinv * v.VX * yinv * w.VX).trace() + (yinv * v.VY * yinv * w.VY).trace());
}

namespace {

double neg_log_det(const Mat& y) {
  JacobiDecomp ldl = jacobi_decompose(y);
  double s = 0.0;
  for (int i = 0; i < ldl.d.size(); ++i) s += std::log(ldl.d(i));
  return -s;
}

// Symmetric coordinate basis matrix for index pair (a,b), a <= b.
Mat sym_basis(int g, int a, int b) {
  Mat e = Mat::Zero(g, g);
  e(a, b) = 1.0;
  e(b, a) = 1.0;
  if (a == b) e(a, b) = 1.0;
  return e;
}

}  // namespace

double potential_hessian_check(const SiegelPoint& tau, double h) {
  const int g = tau.dim();
  std::vector<std::pair<int, int>> coords;
  for (int a = 0; a < g; ++a)
    for (int b = a; b < g; ++b) coords.emplace_back(a, b);
  const int n = static_cast<int>(coords.size());

  auto k_at = [&](const Mat& dy) { return neg_log_det((tau.Y + dy).eval()); };

  // step relative to the smallest eigenvalue: the potential's derivatives
  // blow up like powers of lambda_min^-1, so an absolute step loses accuracy
  // on nearly singular Y
  h *= lambda_min_sym(tau.Y);

  Mat yinv = tau.Y.inverse();
  double max_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    Mat ei = sym_basis(g, coords[i].first, coords[i].second);
    for (int j = 0; j < n; ++j) {
      Mat ej = sym_basis(g, coords[j].first, coords[j].second);
      const double closed = 0.25 * (yinv * ei * yinv * ej).trace();

      // d^2 K / dz_i dzbar_j = (1/4)(K_{x_i x_j} + K_{y_i y_j})
      //                      + (i/4)(K_{x_i y_j} - K_{y_i x_j});
      // K depends on Y only, so the x-derivatives vanish identically.
      double kyy;
      if (i == j) {
        kyy = (k_at(h * ei) - 2.0 * k_at(Mat::Zero(g, g)) + k_at(-h * ei)) / (h * h);
      } else {
        kyy = (k_at(h * (ei + ej)) - k_at(h * (ei - ej)) - k_at(h * (ej - ei)) +
               k_at(-h * (ei + ej))) /
              (4.0 * h * h);
      }
      max_dev = std::max(max_dev, std::abs(0.25 * kyy - closed));
    }
  }
  return max_dev;
}

double siegel_distance(const SiegelPoint& a, const SiegelPoint& b) {
  if (a.dim() != b.dim()) fail(Errc::DimensionMismatch, "point dimensions differ");
  const int g = a.dim();
  if (g == 0) return 0.0;
  CMat t1 = a.complex(), t2 = b.complex();
  CMat t1c = t1.conjugate(), t2c = t2.conjugate();
  CMat r = (t1 - t2) * (t1 - t2c).inverse() * (t1c - t2c) * (t1c - t2).inverse();
  Eigen::ComplexEigenSolver<CMat> es(r, /*computeEigenvectors=*/false);
  double sum = 0.0;
  for (int k = 0; k < g; ++k) {
    Cx lam = es.eigenvalues()(k);
    double rk = lam.real();
    if (rk < -1e-9 || rk > 1.0 - 1e-15 || std::abs(lam.imag()) > 1e-8 * (1.0 + std::abs(rk)))
      fail(Errc::NumericallySingular, "cross-ratio eigenvalue outside [0, 1)");
    rk = std::clamp(rk, 0.0, 1.0 - 1e-16);
    const double s = std::sqrt(rk);
    const double l = std::log((1.0 + s) / (1.0 - s));
    sum += l * l;
  }
  return std::sqrt(0.5 * sum);
}

double curve_length(const std::vector<SiegelPoint>& path) {
  if (path.size() < 2) fail(Errc::SamplesTooCoarse, "need at least 2 samples");
  double len = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    SiegelPoint mid;
    mid.X = 0.5 * (path[i].X + path[i + 1].X);
    mid.Y = 0.5 * (path[i].Y + path[i + 1].Y);
    TangentVec v{path[i + 1].X - path[i].X, path[i + 1].Y - path[i].Y};
    const double seg = std::sqrt(wp_norm_sq(mid, v));
    if (seg > 0.1 + 1e-12) fail(Errc::SamplesTooCoarse, "segment wp-length exceeds 0.1");
    len += seg;
  }
  return len;
}

CMat harish_chandra(const SiegelPoint& tau) {
  const int g = tau.dim();
  CMat i_id = Cx(0.0, 1.0) * CMat::Identity(g, g);
  CMat t = tau.complex();
  return (t - i_id) * (t + i_id).inverse();
}

}  // namespace wpc
