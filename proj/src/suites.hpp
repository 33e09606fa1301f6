#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collapse.hpp"

namespace wpc {

class Rng;

// random generators shared by property sweeps and tests
Mat random_spd(int n, Rng& rng);
Mat random_unimodular(int n, Rng& rng);
SiegelPoint random_siegel_point(int g, Rng& rng);
TangentVec random_tangent(int g, Rng& rng);
SymplecticMat random_symplectic(int g, Rng& rng);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured quantity (residual, slope, ...)
  double bound = 0.0;  // what it was compared against
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// closed-form genus-1 checks: coordinate change, fiber circumference,
// GH-upper decay rate, basepoint renormalization
SuiteReport g1_suite();

// genus-2 checks: explicit coordinate tensor and the product-metric remainder
SuiteReport g2_suite();

// cross-module property sweeps (invariance, certified-bound, reduction laws)
SuiteReport properties_suite(std::uint64_t seed = 0);

}  // namespace wpc
