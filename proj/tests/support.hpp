#pragma once

// Shared helpers for the test binaries: error capture, random monodromy and
// a few derived specs.

#include <functional>
#include <optional>
#include <random>

#include "bcover/complexes.hpp"
#include "bcover/covering.hpp"
#include "bcover/error.hpp"
#include "bcover/fixtures.hpp"
#include "bcover/intersection.hpp"
#include "bcover/spec_file.hpp"

namespace support {

using namespace bcover;

/// The error code thrown by f, or nullopt if it returns normally.
inline std::optional<ErrorCode> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Permutation random_permutation(int d, std::mt19937& rng) {
  std::vector<int> image(d);
  for (int i = 0; i < d; ++i) image[i] = i;
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(image);
}

/// A permutation whose order divides the prime n: disjoint random n-cycles.
inline Permutation random_element_of_order(int d, int n, std::mt19937& rng) {
  std::vector<int> points(d);
  for (int i = 0; i < d; ++i) points[i] = i;
  std::shuffle(points.begin(), points.end(), rng);
  const int cycles = std::uniform_int_distribution<int>(0, d / n)(rng);
  std::vector<int> image(d);
  for (int i = 0; i < d; ++i) image[i] = i;
  for (int c = 0; c < cycles; ++c)
    for (int k = 0; k < n; ++k) image[points[c * n + k]] = points[c * n + (k + 1) % n];
  return Permutation(image);
}

inline Permutation power(const Permutation& p, int e) {
  auto out = Permutation::identity(p.degree());
  for (int i = 0; i < e; ++i) out = p * out;
  return out;
}

namespace detail {

// Assigns free generators at random and solves every relator that has a
// single unknown letter. Works whenever the relators can be peeled off one
// at a time (complexes collapsing onto a graph).
inline std::optional<MonodromyRep> greedy_rep(const EdgePathPresentation& p, int d,
                                              std::mt19937& rng) {
  const auto n = p.generators().size();
  std::vector<std::optional<Permutation>> img(n);
  std::size_t assigned = 0;
  auto letter_value = [&](const Letter& l) {
    return l.exponent > 0 ? *img[l.generator] : img[l.generator]->inverse();
  };
  while (assigned < n) {
    bool progress = false;
    for (const auto& w : p.relators()) {
      std::optional<std::size_t> unknown_pos;
      int unknown = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!img[w[i].generator]) {
          ++unknown;
          unknown_pos = i;
        }
      if (unknown != 1) continue;
      // w = l_0 ... l_k ... with l_k unknown; identity = B * x * A.
      auto a = Permutation::identity(d);
      for (std::size_t i = 0; i < *unknown_pos; ++i) a = letter_value(w[i]) * a;
      auto b = Permutation::identity(d);
      for (std::size_t i = *unknown_pos + 1; i < w.size(); ++i) b = letter_value(w[i]) * b;
      auto x = b.inverse() * a.inverse();
      const auto& l = w[*unknown_pos];
      img[l.generator] = l.exponent > 0 ? x : x.inverse();
      ++assigned;
      progress = true;
    }
    if (!progress) {
      for (std::size_t g = 0; g < n; ++g)
        if (!img[g]) {
          img[g] = random_permutation(d, rng);
          ++assigned;
          break;
        }
    }
  }
  MonodromyRep rep;
  rep.degree = d;
  for (auto& i : img) rep.images.push_back(*i);
  try {
    validate_monodromy(p, rep);
  } catch (const Error&) {
    return std::nullopt;
  }
  return rep;
}

}  // namespace detail

/// A random valid degree-d monodromy. Falls back to a random abelian
/// representation through a cyclic group when the greedy solver fails.
inline MonodromyRep random_rep(const EdgePathPresentation& p, int d, std::mt19937& rng) {
  for (int attempt = 0; attempt < 8; ++attempt)
    if (auto rep = detail::greedy_rep(p, d, rng)) return *rep;
  for (int n : {2, 3, 5}) {
    if (n > d) break;
    auto basis = fixtures::cocycle_basis_mod_p(p, n);
    if (basis.empty()) continue;
    std::vector<int> x(p.generators().size(), 0);
    std::uniform_int_distribution<int> coeff(0, n - 1);
    for (const auto& b : basis) {
      const int c = coeff(rng);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + c * b[i]) % n;
    }
    const auto c = random_element_of_order(d, n, rng);
    MonodromyRep rep;
    rep.degree = d;
    for (int v : x) rep.images.push_back(power(c, v));
    return rep;
  }
  return MonodromyRep::trivial(p, d);
}

/// Suspension of a prepared spec: both new poles join the base stratum of
/// dimension 0 and the branch locus, and every other stratum and R is
/// suspended. The complement, and so the monodromy, is unchanged.
inline SpecFile suspended(const SpecFile& spec) {
  auto space = prepare_space(spec);
  const auto& y = space.base.complex();
  const Vertex top = y.vertices().back();
  const auto poles = SimplicialComplex::generated_by({{top + 1}, {top + 2}});
  SpecFile out;
  out.complex = join(y, poles).all_simplices();
  const int m = y.dim() + 1;
  for (int j = m - 2; j >= 0; --j)
    out.stratification.push_back(join(space.base.level(j - 1), poles).all_simplices());
  const auto& r = space.branch.complex();
  out.branch = join(r, poles).all_simplices();
  for (int j = r.dim() - 1; j >= 0; --j)
    out.branch_stratification.push_back(join(space.branch.level(j - 1), poles).all_simplices());
  out.monodromy = spec.monodromy;
  out.options.perversity = spec.options.perversity;
  return out;
}

/// 4-manifolds with a genuine stratification by locally flat pieces.
struct StratifiedManifold {
  std::string name;
  StratifiedComplex space;
};

inline std::vector<StratifiedManifold> stratified_4_manifolds() {
  using namespace complexes;
  std::vector<StratifiedManifold> out;
  {
    // S^2 x S^2 with the wedge S^2 x {0} u {0} x S^2; the crossing point is X_0.
    auto oct = octahedron();
    auto x = product(oct, oct);
    auto a = x.full_subcomplex([](Vertex v) { return v % 6 == 0; });
    auto b = x.full_subcomplex([](Vertex v) { return v / 6 == 0; });
    auto wedge = SimplicialComplex::generated_by([&] {
      auto s = a.all_simplices();
      auto t = b.all_simplices();
      s.insert(s.end(), t.begin(), t.end());
      return s;
    }());
    auto point = SimplicialComplex::generated_by({{0}});
    out.push_back({"S2xS2", StratifiedComplex(x, {point, point, wedge, wedge})});
  }
  {
    // T^2 x S^2 with T^2 x {0}.
    auto x = product(torus7(), octahedron());
    auto t = x.full_subcomplex([](Vertex v) { return v % 6 == 0; });
    out.push_back({"T2xS2", StratifiedComplex(x, {{}, {}, t, t})});
  }
  {
    // S^4 as the join of a circle and a 2-sphere: the circle has codimension 3.
    auto circle = cycle(3);
    auto sphere = SimplicialComplex::generated_by([] {
      std::vector<Simplex> s;
      const auto tetra = boundary_of_simplex(3);
      for (const auto& f : tetra.facets()) {
        Simplex g;
        for (Vertex v : f) g.push_back(v + 3);
        s.push_back(g);
      }
      return s;
    }());
    auto x = join(circle, sphere);
    auto both = SimplicialComplex::generated_by([&] {
      auto s = circle.all_simplices();
      auto t = sphere.all_simplices();
      s.insert(s.end(), t.begin(), t.end());
      return s;
    }());
    // The join adds edges between the two pieces; one subdivision makes the
    // levels full.
    out.push_back(
        {"S1*S2", barycentric_subdivide(StratifiedComplex(x, {{}, circle, both, both}))});
  }
  return out;
}

/// Every GM perversity of a 4-dimensional space.
inline std::vector<Perversity> gm_perversities_4() {
  return {Perversity(4, {0, 0, 0}), Perversity(4, {0, 0, 1}), Perversity(4, {0, 1, 1}),
          Perversity(4, {0, 1, 2})};
}

}  // namespace support
