#pragma once

// Dense real symmetric / SPD matrix calculus at small dimension (g <= 8):
// LDL^t (Jacobi) decomposition, a cyclic-Jacobi symmetric eigensolver,
// spectral functions and norms.

#include <Eigen/Dense>
#include <vector>

#include "error.hpp"

namespace wpc {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;

// Tolerances (relative unless noted).
inline constexpr double kSymTol = 1e-10;       // accepted asymmetry
inline constexpr double kPdTolFactor = 1e-12;  // pivot/eigenvalue floor, times ||.||_op
inline constexpr double kRelTol = 1e-10;       // reconstruction / round-trip
inline constexpr double kSympTol = 1e-9;       // symplectic relation residual

bool is_symmetric(const Mat& m, double tol = kSymTol);

// Returns (m + m^t)/2; rejects asymmetry beyond tol instead of silently fixing it.
Mat require_symmetric(const Mat& m, double tol = kSymTol);

struct JacobiDecomp {
  Mat L;  // unit lower-triangular
  Vec d;  // positive pivots d_1..d_g
  Mat reconstruct() const { return L * d.asDiagonal() * L.transpose(); }
};

// Y = L D L^t with L unit lower-triangular and D positive diagonal.
JacobiDecomp jacobi_decompose(const Mat& y);

struct SymEig {
  Vec values;   // ascending
  Mat vectors;  // orthonormal columns, A = V diag(values) V^t
};

// Cyclic Jacobi rotation iteration; converges when the off-diagonal Frobenius
// mass drops below 1e-14 * ||A||_F.
SymEig sym_eig(const Mat& a);

struct SpectralStats {
  double lambda_min;
  double op_norm;
  double frob_norm;
  Vec eigenvalues;  // ascending
};

SpectralStats spectral_stats(const Mat& p);

double op_norm_sym(const Mat& a);     // max |eigenvalue| of a symmetric matrix
double lambda_min_sym(const Mat& a);  // smallest eigenvalue of a symmetric matrix
double op_norm(const Mat& a);         // largest singular value (general matrix)

// Rejects matrices that are not positive definite beyond the pdTol floor.
void require_spd(const Mat& p);

Mat spd_sqrt(const Mat& p);
Mat spd_inv_sqrt(const Mat& p);
Mat spd_log(const Mat& p);
Mat sym_exp(const Mat& v);

}  // namespace wpc
