#pragma once

// Edge-path presentations, permutation monodromy, finite covers of the
// complement of a branch locus and their completion to branched covers.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcover/permutation.hpp"
#include "bcover/simplicial.hpp"

namespace bcover {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 along min->max, -1 against it
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

/// Finite presentation of the edge-path group of a connected complex. The
/// spanning tree is the BFS tree from the basepoint, visiting neighbours in
/// ascending order. Generators are the non-tree edges oriented from the
/// smaller to the larger id, in lexicographic order. Relator i is the word of
/// the boundary path a->b->c->a of the i-th triangle [a,b,c], tree edges
/// dropped.
class EdgePathPresentation {
 public:
  EdgePathPresentation() = default;

  const SimplicialComplex& complex() const { return complex_; }
  Vertex basepoint() const { return basepoint_; }
  const std::vector<Simplex>& tree() const { return tree_; }
  /// BFS parent of v; nullopt for the basepoint.
  std::optional<Vertex> parent(Vertex v) const;
  const std::vector<Simplex>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<Simplex>& relator_triangles() const { return complex_.simplices(2); }

  /// The letter read when walking a->b; nullopt for tree edges. Throws
  /// SimplexNotFound if [a,b] is not an edge.
  std::optional<Letter> letter(Vertex a, Vertex b) const;
  std::optional<std::size_t> generator_index(const Simplex& edge) const;
  /// "a->b" for generator i.
  std::string generator_name(std::size_t i) const;

 private:
  friend EdgePathPresentation edge_path_presentation(const SimplicialComplex&, Vertex);

  SimplicialComplex complex_;
  Vertex basepoint_ = 0;
  std::vector<Simplex> tree_;
  std::unordered_map<Vertex, Vertex> parent_;
  std::vector<Simplex> generators_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> generator_index_;
  std::vector<Word> relators_;
};

/// Throws Disconnected or BadBasepoint.
EdgePathPresentation edge_path_presentation(const SimplicialComplex& c, Vertex basepoint);

/// Degree-d permutation assignment, one permutation per generator.
struct MonodromyRep {
  int degree = 1;
  std::vector<Permutation> images;

  static MonodromyRep trivial(const EdgePathPresentation& p, int degree);
};

/// Throws MissingGenerator, DegreeMismatch or RelatorViolated.
void validate_monodromy(const EdgePathPresentation& p, const MonodromyRep& rep);

/// Sheet permutation along the oriented edge a->b: sheet i at a continues as
/// sheet T(i) at b.
Permutation edge_transport(const EdgePathPresentation& p, const MonodromyRep& rep, Vertex a,
                           Vertex b);
/// Evaluates a word, first letter applied first.
Permutation evaluate(const Word& w, const MonodromyRep& rep);

/// Base pseudomanifold, branch locus and monodromy on the complement.
struct BranchedCoverSpec {
  StratifiedComplex base;
  /// R with its own stratification (indexed by the dimension of R).
  StratifiedComplex branch;
  /// Full subcomplex of the base on vertices outside R.
  SimplicialComplex complement;
  EdgePathPresentation presentation;
  MonodromyRep monodromy;

  int degree() const { return monodromy.degree; }
  int dim() const { return base.dim(); }
  bool is_branch_simplex(const Simplex& s) const { return branch.complex().contains(s); }

  /// Validates fullness, codimension and monodromy. The presentation is
  /// computed on the complement with the given basepoint.
  static BranchedCoverSpec make(StratifiedComplex base, StratifiedComplex branch,
                                Vertex basepoint, MonodromyRep rep);
  /// Fullness, pseudomanifold and codimension checks without monodromy.
  static void validate_space(const StratifiedComplex& base, const StratifiedComplex& branch);
  /// Presentation only; used to list generators before monodromy exists.
  static EdgePathPresentation complement_presentation(const StratifiedComplex& base,
                                                      const SimplicialComplex& branch,
                                                      Vertex basepoint);
};

/// A simplicial map total -> base with finite fibers.
struct CoverComplex {
  int degree = 1;
  SimplicialComplex base;
  SimplicialComplex branch;
  SimplicialComplex total;
  /// Base vertex under each total vertex (indexed by total vertex id).
  std::vector<Vertex> over;
  /// Sheet for vertices off the branch locus, lift index over it.
  std::vector<int> label;
  /// Orbit count of the local monodromy group for every simplex of R.
  std::map<Simplex, int> branch_orbits;

  Simplex project(const Simplex& s) const;
  /// Number of simplices of the total complex over a base simplex.
  std::size_t fiber_size(const Simplex& base_simplex) const;
  bool lies_over_branch(Vertex x) const { return branch.has_vertex(over.at(x)); }
};

/// Unbranched cover of a connected complex from a validated representation.
CoverComplex build_cover(const EdgePathPresentation& p, const MonodromyRep& rep);
/// Unbranched cover of the complement of R.
CoverComplex build_complement_cover(const BranchedCoverSpec& spec);

/// Full subcomplex of star(s) on vertices outside the branch locus.
SimplicialComplex punctured_star(const SimplicialComplex& c, const SimplicialComplex& branch,
                                 const Simplex& s);

/// Sheet permutations of loops in the punctured star of tau, read on the
/// fiber over its least vertex. Identities and repeats are dropped; the
/// trivial group is reported as {identity}.
std::vector<Permutation> local_monodromy_group(const BranchedCoverSpec& spec, const Simplex& tau);
int fiber_cardinality(const BranchedCoverSpec& spec, const Simplex& tau);

/// Branched cover over the whole base. Lifts of a branch simplex are the
/// components of the preimage of its punctured star.
CoverComplex fox_complete(const BranchedCoverSpec& spec);

/// Common refinement of the base strata and the strata of R, re-indexed by
/// dimension.
StratifiedComplex refine_stratification(const StratifiedComplex& base,
                                        const StratifiedComplex& branch);
/// X_j = preimage of Y_j.
StratifiedComplex pullback_stratification(const CoverComplex& cover,
                                          const StratifiedComplex& refined);

struct PuncturedStarResult {
  Simplex simplex;
  int components = 0;
};

struct ConnectivityReport {
  std::vector<PuncturedStarResult> downstairs;
  std::vector<PuncturedStarResult> upstairs;

  bool passed() const;
  std::vector<Simplex> failing() const;
};

/// Components of every punctured star of a simplex of R.
ConnectivityReport punctured_star_connectivity(const SimplicialComplex& base,
                                               const SimplicialComplex& branch);
/// Downstairs check, and the same check in the completed cover when the
/// downstairs check passes.
ConnectivityReport complement_connectivity_check(const BranchedCoverSpec& spec);

struct RiemannHurwitzResult {
  long long chi_homology = 0;
  long long chi_combinatorial = 0;
  std::vector<int> betti;
};
/// Throws ChiMismatch.
RiemannHurwitzResult riemann_hurwitz_check(const CoverComplex& cover);

}  // namespace bcover
