#pragma once

#include <vector>

#include "linalg.hpp"

namespace wpc {

// Metric geometry of the cone of positive definite symmetric matrices with the
// scale-invariant inner product <V,W>_P = (1/2) tr(P^-1 V P^-1 W).

double trwp_norm_sq(const Mat& p, const Mat& v);
double trwp_inner(const Mat& p, const Mat& v, const Mat& w);
double trwp_distance(const Mat& p, const Mat& q);

// geodesic(0) = p with velocity v; s -> p^{1/2} exp(s p^{-1/2} v p^{-1/2}) p^{1/2}
Mat trwp_geodesic(const Mat& p, const Mat& v, double s);

// exp/log pair for correspondence transport between cones
Mat trwp_log(const Mat& p, const Mat& q);   // tangent at p pointing to q
Mat trwp_exp(const Mat& p, const Mat& v);   // geodesic(1)

struct FlatMetricCoeffs {
  Mat p;
  double volume;             // sqrt(det P)
  double shortest_len_sq;    // min over nonzero integer vectors of n^t P n
};

// Shortest vectors are enumerated over |n|_inf <= 3 after lattice reduction.
FlatMetricCoeffs flat_metric_coeffs(const Mat& p);

// Divide each t_n by the scalar d_g(n); a scaling isometry of the cone.
std::vector<Mat> normalize_basepoint(const std::vector<Mat>& t_seq,
                                     const std::vector<double>& d_g_seq);

}  // namespace wpc
