#include "hypoly/error.hpp"

namespace hypoly {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivergentPlanes: return "DivergentPlanes";
    case Errc::NotAnIsometry: return "NotAnIsometry";
    case Errc::BadIncidence: return "BadIncidence";
    case Errc::DegenerateVertex: return "DegenerateVertex";
    case Errc::OriginOutside: return "OriginOutside";
    case Errc::NotCompact: return "NotCompact";
    case Errc::IndexMismatch: return "IndexMismatch";
    case Errc::PathBroken: return "PathBroken";
    case Errc::DegenerateFlag: return "DegenerateFlag";
    case Errc::ConstraintProjectionFailed: return "ConstraintProjectionFailed";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::LeftStratum: return "LeftStratum";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ContinuationStalled: return "ContinuationStalled";
    case Errc::IdealPoint: return "IdealPoint";
    case Errc::SkeletonMismatch: return "SkeletonMismatch";
    case Errc::AnglesDiffer: return "AnglesDiffer";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Inadmissible: return "Inadmissible";
    case Errc::NotTrivalent: return "NotTrivalent";
    case Errc::ReductionStuck: return "ReductionStuck";
    case Errc::UnsupportedVertexSplitting: return "UnsupportedVertexSplitting";
    case Errc::NoAdmissibleColoring: return "NoAdmissibleColoring";
    case Errc::ZeroInvariant: return "ZeroInvariant";
    case Errc::CatalogBroken: return "CatalogBroken";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::Parse: return "Parse";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace hypoly
