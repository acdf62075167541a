#include "branchcov/error.hpp"

namespace branchcov {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::MalformedCycles: return "MalformedCycles";
    case Errc::MalformedImages: return "MalformedImages";
    case Errc::NotConjugate: return "NotConjugate";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::EmptyBranchData: return "EmptyBranchData";
    case Errc::InconsistentData: return "InconsistentData";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadFactorPair: return "BadFactorPair";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::PointOutOfRange: return "PointOutOfRange";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::BadInput: return "BadInput";
    case Errc::TrivialPartition: return "TrivialPartition";
    case Errc::TrivialData: return "TrivialData";
    case Errc::UnsupportedDegree: return "UnsupportedDegree";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace branchcov
