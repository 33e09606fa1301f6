#include "reduction.hpp"

#include <cmath>
#include <cstdlib>

namespace wpc {

namespace {

constexpr int kMaxSwaps = 100000;
constexpr int kMaxSl2Steps = 10000;
constexpr double kLovaszDelta = 0.75;
constexpr double kSwapSlack = 1e-12;  // swap only on strict relative violation

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::IntegerOverflow, "unimodular entry overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::IntegerOverflow, "unimodular entry overflow");
  return r;
}

}  // namespace

SiegelCoords siegel_coords(const SiegelPoint& tau) {
  JacobiDecomp ldl = jacobi_decompose(tau.Y);
  return SiegelCoords{tau.X, ldl.L, ldl.d};
}

SiegelPoint from_siegel_coords(const SiegelCoords& c) {
  Mat y = c.l * c.d.asDiagonal() * c.l.transpose();
  return make_siegel_point(c.x, y);
}

SpdMembership spd_membership(const Mat& y, double u) {
  if (u <= 1.0) fail(Errc::BadInput, "Siegel parameter u must exceed 1");
  JacobiDecomp ldl = jacobi_decompose(y);
  const int g = static_cast<int>(ldl.d.size());
  SpdMembership m{true, true, true};
  for (int i = 1; i < g; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(ldl.L(i, j)) >= u) m.l_ok = false;
  for (int i = 0; i + 1 < g; ++i)
    if (ldl.d(i) >= u * ldl.d(i + 1)) m.chain_ok = false;
  if (g > 0 && 1.0 >= u * ldl.d(0)) m.scale_ok = false;
  return m;
}

bool in_siegel_set(const SiegelPoint& tau, double u) {
  if (!spd_membership(tau.Y, u).all()) return false;
  return tau.X.cwiseAbs().maxCoeff() < u || tau.dim() == 0;
}

bool in_siegel_set_spd(const Mat& y, double u) { return spd_membership(y, u).all(); }

ReduceResult reduce_spd(const Mat& y, double u) {
  if (u < 2.0) fail(Errc::BadInput, "reduce_spd requires u >= 2");
  require_spd(y);
  const int g = static_cast<int>(y.rows());

  Mat a = require_symmetric(y);
  IMat umat = IMat::Identity(g, g);

  auto translate = [&](int target, int src, long long q) {
    // basis vector b_target <- b_target - q * b_src  (column op on U)
    if (q == 0) return;
    for (int r = 0; r < g; ++r)
      umat(r, target) = checked_add(umat(r, target), checked_mul(-q, umat(r, src)));
    a.col(target) -= static_cast<double>(q) * a.col(src);
    a.row(target) -= static_cast<double>(q) * a.row(src);
  };
  auto swap_cols = [&](int i, int j) {
    umat.col(i).swap(umat.col(j));
    a.col(i).swap(a.col(j));
    a.row(i).swap(a.row(j));
  };

  int swaps = 0;
  int k = 1;
  while (k < g) {
    // size-reduce b_k against b_{k-1}, ..., b_0; each translation shifts the
    // coefficients against earlier vectors, so refresh the decomposition
    JacobiDecomp ldl = jacobi_decompose(a);
    for (int j = k - 1; j >= 0; --j) {
      const double mu = ldl.L(k, j);
      if (std::abs(mu) > 0.5 + kSwapSlack) {
        translate(k, j, std::llround(mu));
        ldl = jacobi_decompose(a);
      }
    }
    const double mu = ldl.L(k, k - 1);
    if (ldl.d(k) < (kLovaszDelta - mu * mu) * ldl.d(k - 1) * (1.0 - kSwapSlack)) {
      swap_cols(k - 1, k);
      if (++swaps > kMaxSwaps) fail(Errc::NoConvergence, "reduction swap cap exceeded");
      k = std::max(k - 1, 1);
    } else {
      ++k;
    }
  }

  // Deterministic sign canonicalization: make the leading subdiagonal entry of
  // each row of L nonnegative so that conjugate inputs reduce identically.
  if (g > 1) {
    JacobiDecomp ldl = jacobi_decompose(a);
    for (int i = 1; i < g; ++i) {
      for (int j = 0; j < i; ++j) {
        if (std::abs(ldl.L(i, j)) > 1e-9) {
          if (ldl.L(i, j) < 0.0) {
            for (int r = 0; r < g; ++r) umat(r, i) = -umat(r, i);
            a.col(i) *= -1.0;
            a.row(i) *= -1.0;
            ldl = jacobi_decompose(a);
          }
          break;
        }
      }
    }
  }

  return ReduceResult{0.5 * (a + a.transpose()), umat, swaps};
}

Sl2Result reduce_sl2(const SiegelPoint& tau) {
  if (tau.dim() != 1) fail(Errc::DimensionMismatch, "reduce_sl2 requires g = 1");
  double x = tau.X(0, 0), y = tau.Y(0, 0);
  // integer 2x2 word: (a b; c d) acting as (a z + b)/(c z + d)
  long long a = 1, b = 0, c = 0, d = 1;
  int steps = 0;
  for (;;) {
    if (++steps > kMaxSl2Steps) fail(Errc::NoConvergence, "SL(2,Z) reduction step cap");
    const long long n = std::llround(x);
    if (n != 0) {
      x -= static_cast<double>(n);
      a = checked_add(a, checked_mul(-n, c));
      b = checked_add(b, checked_mul(-n, d));
    }
    const double norm2 = x * x + y * y;
    if (norm2 >= 1.0 - 1e-12) break;
    // invert: z -> -1/z
    const double nx = -x / norm2, ny = y / norm2;
    x = nx;
    y = ny;
    const long long na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  Sl2Result out;
  out.m.A = Mat::Constant(1, 1, static_cast<double>(a));
  out.m.B = Mat::Constant(1, 1, static_cast<double>(b));
  out.m.C = Mat::Constant(1, 1, static_cast<double>(c));
  out.m.D = Mat::Constant(1, 1, static_cast<double>(d));
  out.tau_red = act(out.m, tau);
  return out;
}

bool deep_neighborhood(const SiegelPoint& tau, int gprime, double r, double u) {
  if (gprime < 0 || gprime >= tau.dim()) fail(Errc::BadInput, "need 0 <= g' < g");
  if (!in_siegel_set(tau, u)) return false;
  JacobiDecomp ldl = jacobi_decompose(tau.Y);
  return ldl.d(gprime) > r;
}

}  // namespace wpc
