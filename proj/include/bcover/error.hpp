#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bcover {

enum class ErrorCode {
  // simplicial-core
  MissingFace,
  DuplicateSimplex,
  NonAscendingTuple,
  InvalidVertex,
  SimplexNotFound,
  NotASubcomplex,
  BadFiltration,
  NotFull,
  NotPseudomanifold,
  // covering
  Disconnected,
  BadBasepoint,
  RelatorViolated,
  MissingGenerator,
  NotAPermutation,
  DegreeMismatch,
  SimplexNotInBranchLocus,
  BranchNotInCodim2Level,
  DisconnectedPuncturedStar,
  InsufficientSubdivision,
  ChiMismatch,
  // local-systems
  RelatorViolatedMatrix,
  NotPermutationSystem,
  NotInvertible,
  NotFlat,
  RankMismatch,
  // intersection
  BadDimension,
  BadPerversity,
  AnchorUnavailable,
  // decomposition
  BranchingAtHighCodim,
  // cli
  ParseError,
  UnknownFixture,
  BadParams,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bcover
