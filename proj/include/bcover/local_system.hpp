#pragma once

// Local systems of rational vector spaces as flat edge transports.

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "bcover/covering.hpp"
#include "bcover/linalg.hpp"
#include "bcover/simplicial.hpp"

namespace bcover {

class LocalSystemQ {
 public:
  LocalSystemQ() = default;
  /// forward maps each edge [a,b] (a < b) to the transport a -> b. Every edge
  /// of base needs an invertible rank x rank matrix; flatness is checked on
  /// every triangle. Throws RankMismatch, NotInvertible, NotFlat.
  LocalSystemQ(SimplicialComplex base, std::size_t rank,
               std::unordered_map<Simplex, QMatrix, SimplexHash> forward);

  static LocalSystemQ trivial(SimplicialComplex base, std::size_t rank);

  const SimplicialComplex& base() const { return base_; }
  std::size_t rank() const { return rank_; }
  /// Transport along the oriented edge a -> b.
  const QMatrix& transport(Vertex a, Vertex b) const;
  bool is_flat() const;

 private:
  SimplicialComplex base_;
  std::size_t rank_ = 0;
  std::unordered_map<Simplex, QMatrix, SimplexHash> forward_;
  std::unordered_map<Simplex, QMatrix, SimplexHash> backward_;
};

/// Matrices for the generators of a presentation.
struct RepresentationQ {
  EdgePathPresentation presentation;
  std::size_t rank = 0;
  std::vector<QMatrix> matrices;
};

/// Tree edges carry the identity, generator edges their matrix. Throws
/// RankMismatch, NotInvertible, RelatorViolatedMatrix.
LocalSystemQ from_representation(const RepresentationQ& rep);

/// Permutation matrix with P e_i = e_{p(i)}.
QMatrix permutation_matrix(const Permutation& p);
/// The rank-d permutation system of a degree-d monodromy.
LocalSystemQ pushforward_local_system(const EdgePathPresentation& p, const MonodromyRep& rep);

struct TraceSplit {
  LocalSystemQ constant;        // rank 1, trivial
  LocalSystemQ kernel;          // rank d-1, the sum-zero part
  QMatrix unit;                 // d x 1, all ones
  QMatrix trace;                // 1 x d, coordinate sum
  QMatrix kernel_inclusion;     // d x (d-1), column i is e_i - e_{d-1}
  QMatrix kernel_projection;    // (d-1) x d, left inverse of kernel_inclusion killing unit
  QMatrix constant_projection;  // 1 x d, trace / d
};

/// Splits a permutation system as constant plus sum-zero kernel. Throws
/// NotPermutationSystem.
TraceSplit trace_split(const LocalSystemQ& p);
/// Transport of the sum-zero kernel for a single permutation.
QMatrix kernel_transport(const Permutation& p);

struct GlobalSections {
  std::size_t dimension = 0;
  /// Values at the least vertex of each component, concatenated per section.
  std::vector<std::vector<Rational>> basis;
};
/// Flat sections: vectors fixed by every loop transport.
GlobalSections global_sections(const LocalSystemQ& l);

/// Chains sigma (x) v with v in the fiber over the least vertex of sigma.
/// Throws NotASubcomplex.
ChainComplexQ twisted_chain_complex(const SimplicialComplex& c, const LocalSystemQ& l);
std::vector<int> twisted_betti(const SimplicialComplex& c, const LocalSystemQ& l);

/// Throws NotASubcomplex.
LocalSystemQ restrict(const LocalSystemQ& l, const SimplicialComplex& sub);

}  // namespace bcover
