#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypoly {

enum class Errc {
  DivergentPlanes,
  NotAnIsometry,
  BadIncidence,
  DegenerateVertex,
  OriginOutside,
  NotCompact,
  IndexMismatch,
  PathBroken,
  DegenerateFlag,
  ConstraintProjectionFailed,
  SingularJacobian,
  LeftStratum,
  NoConvergence,
  ContinuationStalled,
  IdealPoint,
  SkeletonMismatch,
  AnglesDiffer,
  OutOfRange,
  Inadmissible,
  NotTrivalent,
  ReductionStuck,
  UnsupportedVertexSplitting,
  NoAdmissibleColoring,
  ZeroInvariant,
  CatalogBroken,
  InvalidGraph,
  Parse,
  Config,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypoly
