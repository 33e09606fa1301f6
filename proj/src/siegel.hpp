#pragma once

// The Siegel upper half-space S_g: points tau = X + iY with Y > 0, the
// symplectic action, the invariant (Weil-Petersson) metric tensor, its
// Kaehler potential, distances, and curve lengths.

#include <vector>

#include "linalg.hpp"

namespace wpc {

struct SiegelPoint {
  Mat X;  // real part, symmetric
  Mat Y;  // imaginary part, positive definite
  int dim() const { return static_cast<int>(X.rows()); }
  CMat complex() const;
};

SiegelPoint make_siegel_point(const Mat& x, const Mat& y);

struct TangentVec {
  Mat VX;
  Mat VY;
  int dim() const { return static_cast<int>(VX.rows()); }
};

struct SymplecticMat {
  Mat A, B, C, D;  // g x g blocks
  int genus() const { return static_cast<int>(A.rows()); }
  Mat full() const;
};

// ||M^t J M - J||_F <= tol, with J the standard alternating form.
bool is_symplectic(const Mat& m, double tol = kSympTol);

SymplecticMat make_symplectic(const Mat& m, double tol = kSympTol);

// M . tau = (A tau + B)(C tau + D)^{-1}
SiegelPoint act(const SymplecticMat& m, const SiegelPoint& tau);

// Differential of the action: V' = (C tau + D)^{-t} V (C tau + D)^{-1}.
TangentVec push_forward(const SymplecticMat& m, const SiegelPoint& tau, const TangentVec& v);

// (1/2) (tr(Y^{-1} V_X Y^{-1} V_X) + tr(Y^{-1} V_Y Y^{-1} V_Y))
double wp_norm_sq(const SiegelPoint& tau, const TangentVec& v);
double wp_inner(const SiegelPoint& tau, const TangentVec& v, const TangentVec& w);

// Max deviation between the finite-difference complex Hessian of
// K(tau) = -log det Im(tau) and the closed-form metric coefficients.
double potential_hessian_check(const SiegelPoint& tau, double h);

// Invariant distance via the cross-ratio closed form, normalized so that the
// g=1 case reproduces the (1/2) (dx^2+dy^2)/y^2 metric.
double siegel_distance(const SiegelPoint& a, const SiegelPoint& b);

// Midpoint-rule quadrature of the metric along a sampled curve.
double curve_length(const std::vector<SiegelPoint>& path);

// Harish-Chandra realization Phi(tau) = (tau - iI)(tau + iI)^{-1}.
CMat harish_chandra(const SiegelPoint& tau);

}  // namespace wpc
