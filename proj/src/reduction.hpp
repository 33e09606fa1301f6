#pragma once

// Siegel reduction theory: (x_ij, l_ij, d_i) coordinates, Siegel-set
// membership, GL(g,Z) reduction of SPD matrices via lattice-basis reduction
// on the Gram matrix, exact SL(2,Z) reduction for g = 1.

#include "siegel.hpp"

namespace wpc {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct SiegelCoords {
  Mat x;  // symmetric entries x_ij
  Mat l;  // unit lower-triangular L of the Jacobi decomposition
  Vec d;  // positive pivots
};

SiegelCoords siegel_coords(const SiegelPoint& tau);
SiegelPoint from_siegel_coords(const SiegelCoords& c);

// Membership clauses for the SPD Siegel set, reported separately because
// GL(g,Z) conjugation cannot enforce the scale clause 1 < u d_1.
struct SpdMembership {
  bool l_ok;      // |l_ij| < u
  bool chain_ok;  // d_i < u d_{i+1}
  bool scale_ok;  // 1 < u d_1
  bool all() const { return l_ok && chain_ok && scale_ok; }
};

SpdMembership spd_membership(const Mat& y, double u);

bool in_siegel_set(const SiegelPoint& tau, double u);
bool in_siegel_set_spd(const Mat& y, double u);

struct ReduceResult {
  Mat y_red;  // U^t Y U
  IMat u;     // unimodular, 64-bit entries with overflow detection
  int swaps;
};

// Size-reduction plus Lovasz swaps (delta = 3/4) on the Gram matrix;
// guarantees |l_ij| <= 1/2 and d_i < u d_{i+1} for u >= 2.
ReduceResult reduce_spd(const Mat& y, double u = 2.0);

struct Sl2Result {
  SiegelPoint tau_red;
  SymplecticMat m;  // integer entries; act(m, tau) = tau_red
};

// Standard translate/invert reduction to |Re| <= 1/2, |tau| >= 1.
Sl2Result reduce_sl2(const SiegelPoint& tau);

// tau in F_g(u) and d_{g'+1}(tau) > r.
bool deep_neighborhood(const SiegelPoint& tau, int gprime, double r, double u = 2.0);

}  // namespace wpc
