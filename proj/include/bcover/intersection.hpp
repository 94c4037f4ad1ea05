#pragma once

// Perversities and simplicial intersection homology with constant or
// local-system coefficients.

#include <string>
#include <vector>

#include "bcover/local_system.hpp"
#include "bcover/simplicial.hpp"

namespace bcover {

/// A perversity for an m-dimensional space, given by p(2), ..., p(m).
/// p(k) = 0 for k < 2.
class Perversity {
 public:
  Perversity() = default;
  /// Throws BadPerversity unless p(2) = 0 and every step is 0 or 1.
  Perversity(int dim, std::vector<int> values);

  /// Throw BadDimension for m < 2.
  static Perversity lower_middle(int m);
  static Perversity upper_middle(int m);
  static Perversity zero(int m);
  static Perversity top(int m);
  /// "lower" or "upper"; for m < 2 every perversity is empty and the
  /// empty one is returned. Throws BadParams for other names.
  static Perversity named(const std::string& name, int m);

  int dim() const { return dim_; }
  int at(int k) const;
  /// p(2), ..., p(m).
  const std::vector<int>& values() const { return values_; }
  /// Same values on a space of smaller dimension.
  Perversity truncated(int m) const;

  bool operator==(const Perversity&) const = default;
  /// Pointwise comparison.
  bool operator<=(const Perversity& other) const;

 private:
  int dim_ = 0;
  std::vector<int> values_;
};

/// q(k) = k - 2 - p(k).
Perversity complementary(const Perversity& p);

/// Constant rank-1 coefficients, or a local system defined at least on the
/// full subcomplex of non-singular vertices. Does not own the system.
class Coefficients {
 public:
  static Coefficients constant() { return Coefficients(nullptr); }
  static Coefficients twisted(const LocalSystemQ& l) { return Coefficients(&l); }

  bool is_constant() const { return system_ == nullptr; }
  std::size_t rank() const { return system_ ? system_->rank() : 1; }
  const LocalSystemQ* system() const { return system_; }

 private:
  explicit Coefficients(const LocalSystemQ* l) : system_(l) {}
  const LocalSystemQ* system_;
};

/// For every k >= 1 with sigma meeting X_{m-k}: the number of vertices of
/// sigma in X_{m-k}, minus one, is at most dim sigma - k + p(k). Assumes full
/// levels.
bool is_allowable(const Simplex& sigma, const StratifiedComplex& sc, const Perversity& p);

/// Intersection chains: per degree a basis (in chain coordinates
/// simplex_index * rank + fiber_index) of the allowable chains with allowable
/// boundary, and the induced boundary matrices in those bases.
struct ICComplexQ {
  std::vector<std::vector<SparseVectorQ>> basis;
  ChainComplexQ complex;
};

/// Throws NotFull, BadDimension, AnchorUnavailable.
ICComplexQ intersection_chain_complex(const StratifiedComplex& sc, const Perversity& p,
                                      const Coefficients& coeff = Coefficients::constant());
/// Ranks only; does not build bases.
std::vector<int> ih_betti(const StratifiedComplex& sc, const Perversity& p,
                          const Coefficients& coeff = Coefficients::constant());

struct DegreeCheck {
  int degree = 0;
  int expected = 0;
  int actual = 0;
  bool ok() const { return expected == actual; }
};

struct ConeFormulaReport {
  int link_dim = 0;
  int threshold = 0;  // degrees below it are kept
  std::vector<int> link_ih;
  std::vector<int> cone_ih;
  std::vector<DegreeCheck> degrees;
  bool passed() const;
};

/// Cone stratification: the apex is X_0 and X_j is the cone on L_{j-1}.
StratifiedComplex cone_stratified(const StratifiedComplex& link);

/// Compares IH of the cone on a link with the truncated IH of the link. p is a
/// perversity for the cone (dimension link_dim + 1).
ConeFormulaReport cone_formula_check(const StratifiedComplex& link, const Perversity& p);

struct StalkCheck {
  Vertex vertex = 0;
  int codim = 0;
  int threshold = 0;
  std::vector<int> link_ih;
  std::vector<int> star_ih;
  std::vector<DegreeCheck> degrees;
  bool ok() const;
};

struct StalkReport {
  std::vector<StalkCheck> vertices;
  bool passed() const;
};

/// For every singular vertex v, IH of the closed star against the cone
/// formula applied to IH of the link of v.
StalkReport deligne_stalk_check(const StratifiedComplex& sc, const Perversity& p,
                                const Coefficients& coeff = Coefficients::constant());

}  // namespace bcover
