#include "bcover/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "bcover/error.hpp"

namespace bcover {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (int x : image_) {
    if (x < 0 || x >= degree() || hit[x])
      throw Error(ErrorCode::NotAPermutation, "image array is not a bijection of {0..." +
                                                  std::to_string(degree() - 1) + "}");
    hit[x] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> image(degree);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::cycle(int degree, const std::vector<int>& points) {
  auto p = identity(degree);
  for (std::size_t i = 0; i < points.size(); ++i)
    p.image_.at(points[i]) = points[(i + 1) % points.size()];
  return Permutation(p.image_);
}

Permutation Permutation::shift(int degree, int shift) {
  std::vector<int> image(degree);
  for (int i = 0; i < degree; ++i) image[i] = ((i + shift) % degree + degree) % degree;
  return Permutation(std::move(image));
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (q.degree() != degree())
    throw Error(ErrorCode::DegreeMismatch, "composing permutations of different degrees");
  Permutation out;
  out.image_.resize(image_.size());
  for (int i = 0; i < degree(); ++i) out.image_[i] = image_[q.image_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.image_.resize(image_.size());
  for (int i = 0; i < degree(); ++i) out.image_[image_[i]] = i;
  return out;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (image_[i] != i) return false;
  return true;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<char> seen(image_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || image_[i] == i) continue;
    out += "(";
    for (int j = i; !seen[j]; j = image_[j]) {
      if (j != i) out += " ";
      out += std::to_string(j);
      seen[j] = 1;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<std::vector<int>> orbits(int degree, const std::vector<Permutation>& gens) {
  std::vector<Permutation> moves = gens;
  for (const auto& g : gens) moves.push_back(g.inverse());
  std::vector<int> label(degree, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < degree; ++start) {
    if (label[start] >= 0) continue;
    std::vector<int> orbit{start};
    label[start] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : moves)
        if (int y = g(orbit[k]); label[y] < 0) {
          label[y] = label[start];
          orbit.push_back(y);
        }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace bcover
