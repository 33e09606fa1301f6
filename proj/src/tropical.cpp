#include "tropical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "reduction.hpp"

namespace wpc {

double trwp_inner(const Mat& p, const Mat& v, const Mat& w) {
  require_spd(p);
  Mat vs = require_symmetric(v);
  Mat ws = require_symmetric(w);
  Mat pinv = p.inverse();
  return 0.5 * (pinv * vs * pinv * ws).trace();
}

double trwp_norm_sq(const Mat& p, const Mat& v) { return trwp_inner(p, v, v); }

double trwp_distance(const Mat& p, const Mat& q) {
  require_spd(p);
  require_spd(q);
  // relative spectrum via the generalized problem q v = lambda p v; one
  // Cholesky of p is kinder to conditioning than forming p^{-1/2} q p^{-1/2}
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(require_symmetric(q),
                                                       require_symmetric(p));
  if (solver.info() != Eigen::Success)
    fail(Errc::NoConvergence, "generalized eigensolver did not converge");
  double s = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev <= 0.0) fail(Errc::NotPositiveDefinite, "relative spectrum not positive");
    const double l = std::log(ev);
    s += l * l;
  }
  return std::sqrt(0.5 * s);
}

Mat trwp_geodesic(const Mat& p, const Mat& v, double s) {
  require_spd(p);
  Mat ps = spd_sqrt(p);
  Mat pis = spd_inv_sqrt(p);
  Mat w = pis * require_symmetric(v) * pis;
  return ps * sym_exp(s * 0.5 * (w + w.transpose())) * ps;
}

Mat trwp_log(const Mat& p, const Mat& q) {
  require_spd(p);
  require_spd(q);
  Mat ps = spd_sqrt(p);
  Mat pis = spd_inv_sqrt(p);
  Mat m = pis * require_symmetric(q) * pis;
  Mat l = spd_log(0.5 * (m + m.transpose()));
  Mat out = ps * l * ps;
  return 0.5 * (out + out.transpose());
}

Mat trwp_exp(const Mat& p, const Mat& v) { return trwp_geodesic(p, v, 1.0); }

FlatMetricCoeffs flat_metric_coeffs(const Mat& p) {
  require_spd(p);
  const int r = static_cast<int>(p.rows());
  FlatMetricCoeffs out;
  out.p = p;
  out.volume = std::sqrt(p.determinant());

  ReduceResult red = reduce_spd(p);
  const int w = 3;
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXi n = Eigen::VectorXi::Constant(r, -w);
  Vec nv(r);
  for (;;) {
    bool zero = true;
    for (int i = 0; i < r; ++i) {
      nv(i) = n(i);
      if (n(i) != 0) zero = false;
    }
    if (!zero) best = std::min(best, nv.dot(red.y_red * nv));
    int i = 0;
    while (i < r && ++n(i) > w) n(i++) = -w;
    if (i == r) break;
  }
  out.shortest_len_sq = best;
  return out;
}

std::vector<Mat> normalize_basepoint(const std::vector<Mat>& t_seq,
                                     const std::vector<double>& d_g_seq) {
  if (t_seq.size() != d_g_seq.size()) fail(Errc::DimensionMismatch, "sequence lengths differ");
  std::vector<Mat> out;
  out.reserve(t_seq.size());
  for (std::size_t k = 0; k < t_seq.size(); ++k) {
    if (!(d_g_seq[k] > 0.0)) fail(Errc::NonpositiveScale, "d_g must be positive");
    out.push_back(t_seq[k] / d_g_seq[k]);
  }
  return out;
}

}  // namespace wpc
