#include "bcover/error.hpp"

namespace bcover {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::NonAscendingTuple: return "NonAscendingTuple";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::SimplexNotFound: return "SimplexNotFound";
    case ErrorCode::NotASubcomplex: return "NotASubcomplex";
    case ErrorCode::BadFiltration: return "BadFiltration";
    case ErrorCode::NotFull: return "NotFull";
    case ErrorCode::NotPseudomanifold: return "NotPseudomanifold";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BadBasepoint: return "BadBasepoint";
    case ErrorCode::RelatorViolated: return "RelatorViolated";
    case ErrorCode::MissingGenerator: return "MissingGenerator";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::SimplexNotInBranchLocus: return "SimplexNotInBranchLocus";
    case ErrorCode::BranchNotInCodim2Level: return "BranchNotInCodim2Level";
    case ErrorCode::DisconnectedPuncturedStar: return "DisconnectedPuncturedStar";
    case ErrorCode::InsufficientSubdivision: return "InsufficientSubdivision";
    case ErrorCode::ChiMismatch: return "ChiMismatch";
    case ErrorCode::RelatorViolatedMatrix: return "RelatorViolatedMatrix";
    case ErrorCode::NotPermutationSystem: return "NotPermutationSystem";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotFlat: return "NotFlat";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadPerversity: return "BadPerversity";
    case ErrorCode::AnchorUnavailable: return "AnchorUnavailable";
    case ErrorCode::BranchingAtHighCodim: return "BranchingAtHighCodim";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace bcover
