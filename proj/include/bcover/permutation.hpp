#pragma once

#include <string>
#include <vector>

namespace bcover {

/// Permutation of {0, ..., d-1} stored as an image array.
class Permutation {
 public:
  Permutation() = default;
  /// Throws NotAPermutation unless image is a bijection of {0, ..., size-1}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int degree);
  /// The cycle (c0 c1 ... ck) in degree d.
  static Permutation cycle(int degree, const std::vector<int>& points);
  /// i -> i + shift mod d.
  static Permutation shift(int degree, int shift);

  int degree() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  /// Composition: (p * q)(i) = p(q(i)).
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  bool is_identity() const;
  bool operator==(const Permutation& other) const = default;
  auto operator<=>(const Permutation& other) const = default;

  /// Cycle notation without fixed points, "()" for the identity.
  std::string cycle_string() const;

 private:
  std::vector<int> image_;
};

/// Orbits of the group generated by gens on {0, ..., d-1}, each sorted,
/// ordered by least element.
std::vector<std::vector<int>> orbits(int degree, const std::vector<Permutation>& gens);

}  // namespace bcover
