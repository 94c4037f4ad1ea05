#pragma once

// Degree-by-degree comparison of the homology of a (branched) cover with the
// intersection homology of the base with constant and sum-zero coefficients.

#include <string>
#include <vector>

#include "bcover/covering.hpp"
#include "bcover/intersection.hpp"
#include "bcover/local_system.hpp"

namespace bcover {

struct UnbranchedReport {
  int degree = 1;
  std::vector<int> betti_cover;
  std::vector<int> betti_base;
  std::vector<int> betti_kernel;  // twisted by the sum-zero system
  std::vector<int> betti_pushforward;
  std::vector<int> equal;  // per degree
  bool passed() const;
};

/// H_j(X) = H_j(Y) + H_j(Y; L) for an unbranched cover X of a connected Y.
UnbranchedReport verify_unbranched(const EdgePathPresentation& p, const MonodromyRep& rep);

struct FiberRow {
  Simplex simplex;
  int orbits = 0;                // local monodromy orbits
  int invariants_plus_one = 0;   // 1 + dim of local sections of L
  int lifts = -1;                // simplices of X over it, -1 if not computed
  bool ok() const { return orbits == invariants_plus_one && (lifts < 0 || lifts == orbits); }
};

/// One row per simplex of the branch locus. Throws DisconnectedPuncturedStar.
std::vector<FiberRow> fiber_rank_report(const BranchedCoverSpec& spec);

struct CodimReport {
  bool applicable = false;   // branch locus of codimension at least 3
  int codim = 0;             // dim Y - dim R, 0 when R is empty
  bool fibers_full = true;   // every fiber over R has `degree` points
  bool non_minimal = false;  // the declared branch locus carries no branching
};

/// Throws BranchingAtHighCodim if R has codimension >= 3 and some fiber over
/// it is smaller than the degree.
CodimReport codim_check(const BranchedCoverSpec& spec);

struct CrossCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct StratumSummary {
  int level = 0;
  int dim = 0;
  std::size_t simplices = 0;
  Simplex least;
};

struct DecompositionReport {
  std::string perversity_name;
  std::vector<int> perversity;  // p(2), ..., p(m)
  int degree = 1;
  int base_dim = 0;
  bool base_is_manifold = false;
  std::size_t cover_vertices = 0;
  std::size_t cover_simplices = 0;

  std::vector<StratumSummary> refined_strata;
  std::vector<int> betti_cover;  // ordinary homology of X
  std::vector<int> betti_base;   // ordinary homology of Y
  std::vector<int> ih_cover;     // IH of X, pulled-back stratification
  std::vector<int> ih_base;      // IH of Y, constant coefficients
  std::vector<int> ih_kernel;    // IH of Y with coefficients in L
  std::vector<int> equal;        // per degree: ih_cover = ih_base + ih_kernel

  std::vector<FiberRow> fibers;
  ConnectivityReport connectivity;
  CodimReport codim;
  std::vector<CrossCheck> cross_checks;

  bool decomposition_holds() const;
  bool cross_checks_pass() const;
  /// 0 when everything holds, 2 when the decomposition fails, 3 when only a
  /// cross-check fails.
  int exit_code() const;
};

/// Builds X, refines the stratification of Y by R and compares degree by
/// degree. Throws on invalid input (DisconnectedPuncturedStar,
/// InsufficientSubdivision, ...).
DecompositionReport verify_branched(const BranchedCoverSpec& spec,
                                    const std::string& perversity = "lower");

std::string to_text(const DecompositionReport& report);
std::string to_json(const DecompositionReport& report);
std::string to_text(const UnbranchedReport& report);
std::string to_json(const UnbranchedReport& report);

}  // namespace bcover
