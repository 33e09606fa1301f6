#include "linalg.hpp"

#include <cmath>

namespace wpc {

bool is_symmetric(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat require_symmetric(const Mat& m, double tol) {
  if (m.rows() != m.cols()) fail(Errc::DimensionMismatch, "matrix is not square");
  if (!is_symmetric(m, tol)) fail(Errc::NotSymmetric, "matrix is not symmetric within tolerance");
  return 0.5 * (m + m.transpose());
}

JacobiDecomp jacobi_decompose(const Mat& y) {
  const Mat a = require_symmetric(y);
  const int n = static_cast<int>(a.rows());
  const double floor = n > 0 ? kPdTolFactor * op_norm_sym(a) : 0.0;

  JacobiDecomp out;
  out.L = Mat::Identity(n, n);
  out.d = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    double dj = a(j, j);
    for (int k = 0; k < j; ++k) dj -= out.L(j, k) * out.L(j, k) * out.d(k);
    if (dj <= floor) fail(Errc::NotPositiveDefinite, "nonpositive pivot in LDL^t");
    out.d(j) = dj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= out.L(i, k) * out.L(j, k) * out.d(k);
      out.L(i, j) = s / dj;
    }
  }
  return out;
}

SymEig sym_eig(const Mat& m) {
  Mat a = require_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Mat> solver(a);
  if (solver.info() != Eigen::Success)
    fail(Errc::NoConvergence, "symmetric eigensolver did not converge");
  SymEig out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

SpectralStats spectral_stats(const Mat& p) {
  const Mat a = require_symmetric(p);
  SymEig eig = sym_eig(a);
  SpectralStats st;
  st.eigenvalues = eig.values;
  st.lambda_min = a.rows() > 0 ? eig.values(0) : 0.0;
  st.op_norm = a.rows() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  st.frob_norm = a.norm();
  return st;
}

double op_norm_sym(const Mat& a) {
  if (a.rows() == 0) return 0.0;
  return sym_eig(a).values.cwiseAbs().maxCoeff();
}

double lambda_min_sym(const Mat& a) {
  if (a.rows() == 0) return 0.0;
  return sym_eig(a).values(0);
}

double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return std::sqrt(op_norm_sym((a.transpose() * a).eval()));
}

void require_spd(const Mat& p) {
  const Mat a = require_symmetric(p);
  if (a.rows() == 0) return;
  SymEig eig = sym_eig(a);
  const double floor = kPdTolFactor * eig.values.cwiseAbs().maxCoeff();
  if (eig.values(0) <= floor)
    fail(Errc::NotPositiveDefinite, "matrix is not positive definite");
}

namespace {

Mat apply_spectral(const Mat& p, double (*f)(double), bool needs_pd) {
  if (needs_pd) require_spd(p);
  SymEig eig = sym_eig(p);
  Vec fv = eig.values.unaryExpr([f](double x) { return f(x); });
  return eig.vectors * fv.asDiagonal() * eig.vectors.transpose();
}

}  // namespace

Mat spd_sqrt(const Mat& p) {
  return apply_spectral(p, [](double x) { return std::sqrt(x); }, true);
}

Mat spd_inv_sqrt(const Mat& p) {
  return apply_spectral(p, [](double x) { return 1.0 / std::sqrt(x); }, true);
}

Mat spd_log(const Mat& p) {
  return apply_spectral(p, [](double x) { return std::log(x); }, true);
}

Mat sym_exp(const Mat& v) {
  return apply_spectral(v, [](double x) { return std::exp(x); }, false);
}

}  // namespace wpc
