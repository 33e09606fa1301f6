#include "horo.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "error.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "tropical.hpp"

namespace wpc {

namespace {

constexpr double kSafety = 1.0 + 1e-6;
constexpr double kSqrt2 = 1.4142135623730950488;

void check_gprime(int g, int gprime) {
  if (gprime < 0 || gprime >= g) fail(Errc::DimensionMismatch, "need 0 <= g' < g");
}

Mat sym_embed(int g, int gprime, const Mat& p, const Mat& ppp, const Mat& pp) {
  // blocks: p is g'xg', ppp is g'xg'', pp is g''xg''
  const int gpp = g - gprime;
  Mat m = Mat::Zero(g, g);
  m.topLeftCorner(gprime, gprime) = p;
  m.topRightCorner(gprime, gpp) = ppp;
  m.bottomLeftCorner(gpp, gprime) = ppp.transpose();
  m.bottomRightCorner(gpp, gpp) = pp;
  return m;
}

}  // namespace

BlockSplit split_blocks(const SiegelPoint& tau, int gprime) {
  check_gprime(tau.dim(), gprime);
  const int g = tau.dim(), gpp = g - gprime;
  BlockSplit b;
  b.gprime = gprime;
  b.XP = tau.X.topLeftCorner(gprime, gprime);
  b.XPP = tau.X.bottomRightCorner(gpp, gpp);
  b.XPPP = tau.X.topRightCorner(gprime, gpp);
  b.YP = tau.Y.topLeftCorner(gprime, gprime);
  b.YPP = tau.Y.bottomRightCorner(gpp, gpp);
  b.YPPP = tau.Y.topRightCorner(gprime, gpp);
  return b;
}

BlockSplit split_tangent(const TangentVec& v, int gprime) {
  const int g = static_cast<int>(v.VX.rows());
  check_gprime(g, gprime);
  const int gpp = g - gprime;
  BlockSplit b;
  b.gprime = gprime;
  b.XP = v.VX.topLeftCorner(gprime, gprime);
  b.XPP = v.VX.bottomRightCorner(gpp, gpp);
  b.XPPP = v.VX.topRightCorner(gprime, gpp);
  b.YP = v.VY.topLeftCorner(gprime, gprime);
  b.YPP = v.VY.bottomRightCorner(gpp, gpp);
  b.YPPP = v.VY.topRightCorner(gprime, gpp);
  return b;
}

BasePoint project(const SiegelPoint& tau, int gprime) {
  BlockSplit b = split_blocks(tau, gprime);
  Mat schur = b.YPP - b.YPPP.transpose() * b.YP.inverse() * b.YPPP;
  schur = 0.5 * (schur + schur.transpose());
  require_spd(schur);
  return BasePoint{make_siegel_point(b.XP, b.YP), schur};
}

FiberCoords fiber_coords(const SiegelPoint& tau, int gprime) {
  BlockSplit b = split_blocks(tau, gprime);
  return FiberCoords{b.XPPP, b.YPPP, b.XPP};
}

SiegelPoint assemble(const BasePoint& base, const FiberCoords& f) {
  const int gprime = base.tau_prime.dim();
  const int gpp = static_cast<int>(base.t.rows());
  const int g = gprime + gpp;
  Mat ypp = base.t + f.YPPP.transpose() * base.tau_prime.Y.inverse() * f.YPPP;
  Mat x = sym_embed(g, gprime, base.tau_prime.X, f.XPPP, 0.5 * (f.XPP + f.XPP.transpose()));
  Mat y = sym_embed(g, gprime, base.tau_prime.Y, f.YPPP, 0.5 * (ypp + ypp.transpose()));
  return make_siegel_point(x, y);
}

double conjugator_identities(const SiegelPoint& tau, int gprime) {
  BlockSplit b = split_blocks(tau, gprime);
  const int g = tau.dim(), gpp = g - gprime;
  Mat p = Mat::Identity(g, g);
  p.bottomLeftCorner(gpp, gprime) = -b.YPPP.transpose() * b.YP.inverse();
  BasePoint base = project(tau, gprime);
  Mat diag = Mat::Zero(g, g);
  diag.topLeftCorner(gprime, gprime) = b.YP;
  diag.bottomRightCorner(gpp, gpp) = base.t;
  const double r1 = (p * tau.Y * p.transpose() - diag).norm();
  Mat diag_inv = Mat::Zero(g, g);
  diag_inv.topLeftCorner(gprime, gprime) = b.YP.inverse();
  diag_inv.bottomRightCorner(gpp, gpp) = base.t.inverse();
  const double r2 = (tau.Y.inverse() - p.transpose() * diag_inv * p).norm();
  return std::max(r1, r2);
}

BaseTangent dpi_pushforward(const SiegelPoint& tau, const TangentVec& v, int gprime) {
  BlockSplit by = split_blocks(tau, gprime);
  BlockSplit bv = split_tangent(v, gprime);
  if (v.VX.rows() != tau.dim()) fail(Errc::DimensionMismatch, "tangent dim");
  Mat ypinv = by.YP.inverse();
  Mat w = bv.YPP - bv.YPPP.transpose() * ypinv * by.YPPP -
          by.YPPP.transpose() * ypinv * bv.YPPP +
          by.YPPP.transpose() * ypinv * bv.YP * ypinv * by.YPPP;
  return BaseTangent{TangentVec{bv.XP, bv.YP}, 0.5 * (w + w.transpose())};
}

bool is_vertical(const SiegelPoint& tau, const TangentVec& v, int gprime, double tol) {
  BaseTangent d = dpi_pushforward(tau, v, gprime);
  return d.v_prime.VX.norm() <= tol && d.v_prime.VY.norm() <= tol && d.w.norm() <= tol;
}

double vertical_norm_sq(const SiegelPoint& tau, const TangentVec& v, int gprime) {
  const double scale = std::max(1.0, std::sqrt(v.VX.squaredNorm() + v.VY.squaredNorm()));
  if (!is_vertical(tau, v, gprime, 1e-8 * scale)) fail(Errc::NotVertical, "dpi(V) != 0");
  BlockSplit by = split_blocks(tau, gprime);
  BlockSplit bv = split_tangent(v, gprime);
  Mat t = project(tau, gprime).t;
  Mat tinv = t.inverse();
  Mat ypinv = by.YP.inverse();
  Mat vxt = bv.XPP - bv.XPPP.transpose() * ypinv * by.YPPP -
            by.YPPP.transpose() * ypinv * bv.XPPP;
  double s = (tinv * bv.XPPP.transpose() * ypinv * bv.XPPP).trace() +
             (tinv * bv.YPPP.transpose() * ypinv * bv.YPPP).trace() +
             0.5 * (tinv * vxt * tinv * vxt).trace();
  return s;
}

double vertical_bound(const SiegelPoint& tau, const TangentVec& v, int gprime) {
  const double scale = std::max(1.0, std::sqrt(v.VX.squaredNorm() + v.VY.squaredNorm()));
  if (!is_vertical(tau, v, gprime, 1e-8 * scale)) fail(Errc::NotVertical, "dpi(V) != 0");
  BlockSplit by = split_blocks(tau, gprime);
  BlockSplit bv = split_tangent(v, gprime);
  Mat t = project(tau, gprime).t;
  const double lam = lambda_min_sym(t);
  const double c1 = gprime > 0 ? op_norm_sym(Mat(by.YP.inverse())) : 0.0;
  const double c2 = op_norm(by.YPPP);
  const double nx3 = bv.XPPP.norm(), ny3 = bv.YPPP.norm(), nx2 = bv.XPP.norm();
  const double cross = nx2 + 2.0 * c1 * c2 * nx3;
  return kSafety * ((c1 / lam) * (nx3 * nx3 + ny3 * ny3) +
                    cross * cross / (2.0 * lam * lam));
}

std::vector<TangentVec> vertical_basis(const SiegelPoint& tau, int gprime) {
  BlockSplit by = split_blocks(tau, gprime);
  const int g = tau.dim(), gpp = g - gprime;
  Mat ypinv = by.YP.inverse();
  std::vector<TangentVec> out;
  Mat z = Mat::Zero(g, g);
  auto zero_p = Mat::Zero(gprime, gprime);
  for (int a = 0; a < gprime; ++a)
    for (int b = 0; b < gpp; ++b) {
      Mat e = Mat::Zero(gprime, gpp);
      e(a, b) = 1.0;
      // X''' direction
      out.push_back(TangentVec{sym_embed(g, gprime, zero_p, e, Mat::Zero(gpp, gpp)), z});
      // Y''' direction with the compensating Y'' block keeping t fixed
      Mat comp = e.transpose() * ypinv * by.YPPP + by.YPPP.transpose() * ypinv * e;
      out.push_back(TangentVec{z, sym_embed(g, gprime, zero_p, e, comp)});
    }
  for (int a = 0; a < gpp; ++a)
    for (int b = a; b < gpp; ++b) {
      Mat e = Mat::Zero(gpp, gpp);
      e(a, b) = e(b, a) = 1.0;
      out.push_back(TangentVec{sym_embed(g, gprime, zero_p, Mat::Zero(gprime, gpp), e), z});
    }
  return out;
}

TangentVec horizontal_part(const SiegelPoint& tau, const TangentVec& v, int gprime) {
  std::vector<TangentVec> basis = vertical_basis(tau, gprime);
  const int m = static_cast<int>(basis.size());
  if (m == 0) return v;
  Mat gram(m, m);
  Vec rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) gram(i, j) = gram(j, i) = wp_inner(tau, basis[i], basis[j]);
    rhs(i) = wp_inner(tau, basis[i], v);
  }
  Vec coef = gram.ldlt().solve(rhs);
  TangentVec h{v.VX, v.VY};
  for (int i = 0; i < m; ++i) {
    h.VX -= coef(i) * basis[i].VX;
    h.VY -= coef(i) * basis[i].VY;
  }
  return h;
}

double base_norm_sq(const BasePoint& base, const BaseTangent& w) {
  double s = trwp_norm_sq(base.t, w.w);
  if (base.tau_prime.dim() > 0) s += wp_norm_sq(base.tau_prime, w.v_prime);
  return s;
}

double base_distance(const BasePoint& a, const BasePoint& b) {
  double s = trwp_distance(a.t, b.t);
  double h = a.tau_prime.dim() > 0 ? siegel_distance(a.tau_prime, b.tau_prime) : 0.0;
  return std::sqrt(s * s + h * h);
}

double fiber_path_length(const SiegelPoint& tau_p, const SiegelPoint& tau_q, int gprime,
                         int segments) {
  BasePoint bp = project(tau_p, gprime);
  BasePoint bq = project(tau_q, gprime);
  const double bscale = std::max(1.0, std::sqrt(tau_p.X.squaredNorm() + tau_p.Y.squaredNorm()));
  if ((bp.tau_prime.X - bq.tau_prime.X).norm() > 1e-9 * bscale ||
      (bp.tau_prime.Y - bq.tau_prime.Y).norm() > 1e-9 * bscale ||
      (bp.t - bq.t).norm() > 1e-9 * bscale)
    fail(Errc::BaseMismatch, "endpoints project to different base points");

  FiberCoords fp = fiber_coords(tau_p, gprime);
  FiberCoords fq = fiber_coords(tau_q, gprime);
  const int g = tau_p.dim(), gpp = g - gprime;
  Mat ypinv = bp.tau_prime.Y.inverse();
  Mat zp = Mat::Zero(gprime, gprime);
  double len = 0.0;

  // segment 1: move X'''
  {
    Mat d = fq.XPPP - fp.XPPP;
    TangentVec v{sym_embed(g, gprime, zp, d, Mat::Zero(gpp, gpp)), Mat::Zero(g, g)};
    for (int k = 0; k < segments; ++k) {
      const double s = (k + 0.5) / segments;
      FiberCoords f{fp.XPPP + s * d, fp.YPPP, fp.XPP};
      len += std::sqrt(wp_norm_sq(assemble(bp, f), v)) / segments;
    }
  }
  // segment 2: move Y''' (Y'' follows from the fixed t)
  {
    Mat d = fq.YPPP - fp.YPPP;
    for (int k = 0; k < segments; ++k) {
      const double s = (k + 0.5) / segments;
      Mat yppp = fp.YPPP + s * d;
      Mat comp = d.transpose() * ypinv * yppp + yppp.transpose() * ypinv * d;
      TangentVec v{Mat::Zero(g, g), sym_embed(g, gprime, zp, d, comp)};
      FiberCoords f{fq.XPPP, yppp, fp.XPP};
      len += std::sqrt(wp_norm_sq(assemble(bp, f), v)) / segments;
    }
  }
  // segment 3: move X''
  {
    Mat d = fq.XPP - fp.XPP;
    TangentVec v{sym_embed(g, gprime, zp, Mat::Zero(gprime, gpp), d), Mat::Zero(g, g)};
    for (int k = 0; k < segments; ++k) {
      const double s = (k + 0.5) / segments;
      FiberCoords f{fq.XPPP, fq.YPPP, fp.XPP + s * d};
      len += std::sqrt(wp_norm_sq(assemble(bp, f), v)) / segments;
    }
  }
  return len;
}

FiberBox fiber_box(int g, double u) {
  // X entries live on a unit torus, so displacements never exceed 1; the Y'''
  // range comes from the Siegel-set l- and d-inequalities.
  FiberBox box;
  box.hy3 = u * (1.0 + u * g);
  return box;
}

FiberCoords random_fiber(const FiberBox& box, int gprime, int gpp, Rng& rng) {
  FiberCoords f;
  f.XPPP = Mat::Zero(gprime, gpp);
  f.YPPP = Mat::Zero(gprime, gpp);
  f.XPP = Mat::Zero(gpp, gpp);
  for (int i = 0; i < gprime; ++i)
    for (int j = 0; j < gpp; ++j) {
      f.XPPP(i, j) = rng.uniform(-box.hx3, box.hx3);
      f.YPPP(i, j) = rng.uniform(-box.hy3, box.hy3);
    }
  for (int i = 0; i < gpp; ++i)
    for (int j = i; j < gpp; ++j) f.XPP(i, j) = f.XPP(j, i) = rng.uniform(-box.hx2, box.hx2);
  return f;
}

double fiber_diameter_upper(const BasePoint& base, int gprime, double u, int samples,
                            std::uint64_t seed) {
  const int gpp = static_cast<int>(base.t.rows());
  FiberBox box = fiber_box(gprime + gpp, u);
  Rng rng(seed, 0x66696245ULL, 0);
  std::vector<FiberCoords> pts;
  // opposite extreme corners anchor the sweep; random draws fill the interior
  FiberCoords hi;
  hi.XPPP = Mat::Constant(gprime, gpp, box.hx3);
  hi.YPPP = Mat::Constant(gprime, gpp, box.hy3);
  hi.XPP = Mat::Constant(gpp, gpp, box.hx2);
  FiberCoords lo;
  lo.XPPP = -hi.XPPP;
  lo.YPPP = -hi.YPPP;
  lo.XPP = -hi.XPP;
  pts.push_back(hi);
  pts.push_back(lo);
  for (int k = 2; k < samples; ++k) pts.push_back(random_fiber(box, gprime, gpp, rng));
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, fiber_path_length(assemble(base, pts[i]), assemble(base, pts[j]),
                                              gprime));
  return best;
}

double fiber_diameter_bound(const BasePoint& base, int gprime, double u) {
  const int gpp = static_cast<int>(base.t.rows());
  const int g = gprime + gpp;
  FiberBox box = fiber_box(g, u);
  const double lam = lambda_min_sym(base.t);
  const double c1 = gprime > 0 ? op_norm_sym(Mat(base.tau_prime.Y.inverse())) : 0.0;
  const double cross = std::sqrt(static_cast<double>(gprime * gpp));
  const double c2 = box.hy3 * cross;  // sup of ||Y'''||_op over the box
  const double wx3 = 2.0 * box.hx3 * cross;
  const double wy3 = 2.0 * box.hy3 * cross;
  const double wx2 = 2.0 * box.hx2 * gpp;
  if (lam >= 1.0) {
    // relax the 1/lambda terms to 1/sqrt(lambda): still an upper bound here,
    // and of the advertised C/sqrt(lambda_min) shape
    const double c_const =
        std::sqrt(c1) * (wx3 + wy3) + kSqrt2 * c1 * c2 * wx3 + wx2 / kSqrt2;
    return kSafety * c_const / std::sqrt(lam);
  }
  const double seg1 = std::sqrt(c1 * wx3 * wx3 / lam +
                                2.0 * c1 * c1 * c2 * c2 * wx3 * wx3 / (lam * lam));
  const double seg2 = std::sqrt(c1 / lam) * wy3;
  const double seg3 = wx2 / (kSqrt2 * lam);
  const double at_one = std::sqrt(c1) * (wx3 + wy3) + kSqrt2 * c1 * c2 * wx3 + wx2 / kSqrt2;
  // max keeps the bound monotone across the lambda = 1 crossover
  return kSafety * std::max(seg1 + seg2 + seg3, at_one);
}

double lambda_lower_bound(const SiegelPoint& tau, int gprime, double u) {
  if (!in_siegel_set(tau, u)) fail(Errc::NotInSiegelSet, "point outside the Siegel set");
  check_gprime(tau.dim(), gprime);
  const int g = tau.dim(), gpp = g - gprime;
  JacobiDecomp ldl = jacobi_decompose(tau.Y);
  double dmin = ldl.d(gprime);
  for (int i = gprime + 1; i < g; ++i) dmin = std::min(dmin, ldl.d(i));
  Mat lpp = ldl.L.bottomRightCorner(gpp, gpp);
  const double inv_op = op_norm(Mat(lpp.inverse()));
  return dmin / (inv_op * inv_op) / kSafety;
}

CollapseBounds collapse_bounds(const SiegelPoint& tau_n, int gprime, double R, double u) {
  const int gpp = tau_n.dim() - gprime;
  BasePoint base = project(tau_n, gprime);
  const double lam = lambda_min_sym(base.t);
  const double win = std::exp(kSqrt2 * R);
  CollapseBounds out;
  out.lambda_lo = lam / win / kSafety;
  out.lambda_hi = lam * win * kSafety;
  if (out.lambda_lo < 1.0) fail(Errc::NotDeepEnough, "lambda window dips below 1");

  FiberBox box = fiber_box(tau_n.dim(), u);
  const double cross = std::sqrt(static_cast<double>(gprime * gpp));
  // C1 over the ball: the base Y'-factor drifts by at most exp(sqrt(2) R) in
  // operator norm along wp-paths of length R (scalar case; g' <= 1 certified)
  const double c1 = (gprime > 0 ? op_norm_sym(Mat(base.tau_prime.Y.inverse())) : 0.0) * win;
  const double c2 = box.hy3 * cross;
  const double wx3 = 2.0 * box.hx3 * cross;
  const double wy3 = 2.0 * box.hy3 * cross;
  const double wx2 = 2.0 * box.hx2 * gpp;
  // pure 1/sqrt(lambda) form, valid on the window because lambda_lo >= 1
  const double c_const = std::sqrt(c1) * (wx3 + wy3) + kSqrt2 * c1 * c2 * wx3 + wx2 / kSqrt2;
  out.delta = kSafety * c_const * std::exp(R / kSqrt2) / std::sqrt(lam);
  out.gh_upper = 0.5 * out.delta;
  return out;
}

}  // namespace wpc
