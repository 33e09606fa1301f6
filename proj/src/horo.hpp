#pragma once

#include <vector>

#include "siegel.hpp"

namespace wpc {

// Horospherical decomposition of the Siegel space relative to a boundary
// component of rank gprime.  Blocks follow the splitting
//   Y = [ Y'    Y'''  ]        with Y' of size g'xg', Y''' of size g'xg''.
//       [ tY''' Y''   ]

struct BlockSplit {
  int gprime = 0;
  Mat XP, XPP, XPPP;
  Mat YP, YPP, YPPP;
};

struct BasePoint {
  SiegelPoint tau_prime;  // dim g'
  Mat t;                  // SPD, dim g''
};

struct FiberCoords {
  Mat XPPP, YPPP;  // g' x g''
  Mat XPP;         // g'' x g'' symmetric
};

struct BaseTangent {
  TangentVec v_prime;  // tangent at tau_prime
  Mat w;               // symmetric tangent at t
};

struct CollapseBounds {
  double lambda_lo = 0.0, lambda_hi = 0.0;
  double delta = 0.0;
  double gh_upper = 0.0;
};

BlockSplit split_blocks(const SiegelPoint& tau, int gprime);
BlockSplit split_tangent(const TangentVec& v, int gprime);

BasePoint project(const SiegelPoint& tau, int gprime);
FiberCoords fiber_coords(const SiegelPoint& tau, int gprime);
SiegelPoint assemble(const BasePoint& base, const FiberCoords& f);

// residual of P Y tP = diag(Y', t) with P = [[I,0],[-tY'''(Y')^-1, I]]
double conjugator_identities(const SiegelPoint& tau, int gprime);

BaseTangent dpi_pushforward(const SiegelPoint& tau, const TangentVec& v, int gprime);

bool is_vertical(const SiegelPoint& tau, const TangentVec& v, int gprime, double tol);

double vertical_norm_sq(const SiegelPoint& tau, const TangentVec& v, int gprime);

// certified upper bound for vertical_norm_sq, assembled from op norms of
// (Y')^-1, Y''' and lambda_min(t)
double vertical_bound(const SiegelPoint& tau, const TangentVec& v, int gprime);

std::vector<TangentVec> vertical_basis(const SiegelPoint& tau, int gprime);

// wp-orthogonal projection of v off the vertical subspace
TangentVec horizontal_part(const SiegelPoint& tau, const TangentVec& v, int gprime);

double base_norm_sq(const BasePoint& base, const BaseTangent& w);
double base_distance(const BasePoint& a, const BasePoint& b);

// quadrature length of the three-segment in-fiber path joining two points over
// the same base; an upper bound for the intrinsic fiber distance
double fiber_path_length(const SiegelPoint& tau_p, const SiegelPoint& tau_q, int gprime,
                         int segments = 64);

struct FiberBox {
  double hx2 = 0.5;  // per-entry half-width of the X'' block
  double hx3 = 0.5;  // per-entry half-width of the X''' block
  double hy3 = 0.0;  // per-entry half-width of the Y''' block
};
FiberBox fiber_box(int g, double u);

class Rng;
FiberCoords random_fiber(const FiberBox& box, int gprime, int gpp, Rng& rng);

// measured sample max of fiber_path_length over box pairs
double fiber_diameter_upper(const BasePoint& base, int gprime, double u, int samples,
                            std::uint64_t seed = 0);
// certified closed-form bound for the fiber diameter over the same box
double fiber_diameter_bound(const BasePoint& base, int gprime, double u);

// certified lower bound for lambda_min(project(tau).t) from Jacobi coordinates
double lambda_lower_bound(const SiegelPoint& tau, int gprime, double u);

// certified lambda window, distortion bound delta, and GH upper bound delta/2
// for the radius-R ball around tau_n
CollapseBounds collapse_bounds(const SiegelPoint& tau_n, int gprime, double R, double u);

}  // namespace wpc
