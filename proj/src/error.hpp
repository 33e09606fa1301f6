#pragma once

#include <stdexcept>
#include <string>

namespace wpc {

enum class Errc {
  NotPositiveDefinite,
  NotSymmetric,
  DimensionMismatch,
  NumericallySingular,
  NoConvergence,
  NotVertical,
  BaseMismatch,
  NotInSiegelSet,
  NotDeepEnough,
  NonpositiveScale,
  SiegelChainViolated,
  DegenerateInput,
  DegenerateDirection,
  SamplesTooCoarse,
  IntegerOverflow,
  BadInput,
  Io,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace wpc
