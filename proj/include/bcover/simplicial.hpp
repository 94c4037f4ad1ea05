#pragma once

// Finite simplicial complexes, stratifications and rational chain complexes.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcover/linalg.hpp"

namespace bcover {

using Vertex = int;
/// Strictly ascending vertex tuple.
using Simplex = std::vector<Vertex>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Codimension-one faces in boundary order: face i omits vertex i.
std::vector<Simplex> boundary_faces(const Simplex& s);
/// All nonempty faces (including s itself).
std::vector<Simplex> all_faces(const Simplex& s);
bool is_face_of(const Simplex& face, const Simplex& s);
int simplex_dim(const Simplex& s);
/// "[0,1,2]".
std::string format_simplex(const Simplex& s);

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Validates a raw simplex list: tuples strictly ascending, no duplicates,
  /// every face listed. The order of the list is irrelevant.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

  /// Face closure of the given simplices. For constructions only; user input
  /// goes through from_simplices.
  static SimplicialComplex generated_by(std::vector<Simplex> simplices);

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  bool empty() const { return by_dim_.empty(); }
  std::size_t size() const;
  std::size_t count(int d) const;

  /// Simplices of dimension d in lexicographic order.
  const std::vector<Simplex>& simplices(int d) const;
  /// All simplices ordered by dimension, then lexicographically.
  std::vector<Simplex> all_simplices() const;
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Simplex>& facets() const { return facets_; }
  /// Facets containing vertex v, in facet order.
  const std::vector<std::size_t>& facets_containing(Vertex v) const;

  std::optional<std::size_t> index_of(const Simplex& s) const;
  /// Position of s in all_simplices().
  std::optional<std::size_t> global_index(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  bool has_vertex(Vertex v) const;

  /// Sorted neighbours of v along edges.
  std::vector<Vertex> neighbors(Vertex v) const;
  long long euler_characteristic() const;

  /// Full subcomplex spanned by the vertices satisfying pred.
  SimplicialComplex full_subcomplex(const std::function<bool(Vertex)>& pred) const;
  bool is_subcomplex_of(const SimplicialComplex& ambient) const;
  /// Every simplex of ambient spanned by vertices of *this belongs to *this.
  bool is_full_in(const SimplicialComplex& ambient) const;

  bool operator==(const SimplicialComplex& other) const { return by_dim_ == other.by_dim_; }

 private:
  // Trusted path: simplices already face-closed, duplicates allowed.
  static SimplicialComplex assemble(std::vector<Simplex> simplices);
  void build_indices();

  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> vertices_;
  std::vector<Simplex> facets_;
  std::unordered_map<Vertex, std::vector<std::size_t>> vertex_facets_;
  std::unordered_map<Vertex, std::vector<Vertex>> adjacency_;
};

/// Same as SimplicialComplex::from_simplices.
SimplicialComplex validate_complex(std::vector<Simplex> raw);

/// Closure of all cofaces of s.
SimplicialComplex star(const SimplicialComplex& c, const Simplex& s);
/// Simplices of star(c, s) disjoint from s.
SimplicialComplex link(const SimplicialComplex& c, const Simplex& s);
/// Joins a fresh apex (max id + 1) to every simplex; cone(empty) is a point.
SimplicialComplex cone(const SimplicialComplex& c);
SimplicialComplex cone(const SimplicialComplex& c, Vertex apex);
/// Two cones with apexes max id + 1 and max id + 2.
SimplicialComplex suspension(const SimplicialComplex& c);
/// Join of two complexes on disjoint vertex sets.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
/// Connected components under edge adjacency, each sorted, ordered by least vertex.
std::vector<std::vector<Vertex>> components(const SimplicialComplex& c);
/// Product triangulation of |a| x |b| (staircase on the vertex orders). Vertex
/// (v, w) receives id rank(v) * |V(b)| + rank(w).
SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b);

/// First barycentric subdivision. Vertex k of the output is the k-th simplex
/// of the input in all_simplices() order, so proper faces always receive
/// smaller ids than the simplices containing them.
class Subdivision {
 public:
  explicit Subdivision(const SimplicialComplex& original);

  const SimplicialComplex& result() const { return result_; }
  const SimplicialComplex& original() const { return original_; }
  /// Subdivided image of a subcomplex of the original.
  SimplicialComplex image_of(const SimplicialComplex& sub) const;
  Vertex vertex_of(const Simplex& s) const;
  const Simplex& simplex_of(Vertex v) const;

 private:
  SimplicialComplex original_;
  std::vector<Simplex> ordered_;
  SimplicialComplex result_;
};

/// Rational chain complex. boundaries[j] maps degree j to degree j - 1; the
/// degree-0 entry is an empty 0 x ranks[0] matrix.
struct ChainComplexQ {
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrixQ> boundaries;

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
  /// Shapes chain and consecutive boundaries compose to zero.
  bool is_valid() const;
};

/// Simplicial chains with ascending-vertex orientation.
ChainComplexQ chain_complex(const SimplicialComplex& c);
std::vector<int> betti(const ChainComplexQ& cc);
std::vector<int> betti(const SimplicialComplex& c);
long long alternating_sum(std::span<const int> values);

/// A filtered complex X_0 ⊆ X_1 ⊆ ... ⊆ X_{m-1} ⊆ X_m = X, indexed by dimension.
class StratifiedComplex {
 public:
  StratifiedComplex() = default;
  /// levels[j] is X_j for j < m. Missing trailing entries repeat the last one
  /// given; missing leading entries are empty.
  StratifiedComplex(SimplicialComplex complex, std::vector<SimplicialComplex> levels);

  static StratifiedComplex unstratified(SimplicialComplex complex);
  /// From the descending list X_{m-2}, X_{m-3}, ..., with X_{m-1} = X_{m-2}.
  static StratifiedComplex from_descending(SimplicialComplex complex,
                                           std::vector<SimplicialComplex> descending);

  const SimplicialComplex& complex() const { return complex_; }
  int dim() const { return complex_.dim(); }
  /// X_j; the whole complex for j >= dim().
  const SimplicialComplex& level(int j) const;
  /// X_{m-1}, the singular part.
  const SimplicialComplex& singular_set() const { return level(dim() - 1); }
  bool has_singular_set() const { return !singular_set().empty(); }

  /// Smallest j with v in X_j (dim() for regular vertices).
  int depth(Vertex v) const;
  /// Smallest j with s in X_j.
  int depth(const Simplex& s) const;
  bool is_regular(Vertex v) const { return depth(v) >= dim(); }

  struct Stratum {
    int level = 0;  // j with the stratum a component of X_j \ X_{j-1}
    int dim = -1;   // top dimension of its open simplices
    std::vector<Simplex> simplices;
  };
  /// Components of X_j \ X_{j-1}, ordered by level then by least simplex.
  std::vector<Stratum> strata() const;

  bool levels_full() const;
  /// Throws NotFull naming the first non-full level.
  void require_full() const;
  /// X_{m-1} = X_{m-2}, every facet is m-dimensional and not in X_{m-2}.
  bool is_pseudomanifold() const;
  void require_pseudomanifold() const;

  /// Induced filtration on a subcomplex with the same dimension indexing.
  StratifiedComplex restricted_to(const SimplicialComplex& sub) const;
  /// Induced filtration on a subcomplex, shifting indices down by `shift`
  /// (used for links, where a j-stratum meets the link in dimension j - 1).
  StratifiedComplex restricted_to(const SimplicialComplex& sub, int shift) const;

  StratifiedComplex subdivided() const;
  bool operator==(const StratifiedComplex& other) const = default;

 private:
  SimplicialComplex complex_;
  std::vector<SimplicialComplex> levels_;
  std::unordered_map<Vertex, int> vertex_depth_;
};

/// Barycentric subdivision of a stratified complex; Betti numbers and the
/// level structure carry over.
StratifiedComplex barycentric_subdivide(const StratifiedComplex& sc);

}  // namespace bcover
