#include "bcover/complexes.hpp"
#include "bcover/covering.hpp"
#include "bcover/fixtures.hpp"
#include "bcover/intersection.hpp"
#include "bcover/spec_file.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bcover;
using support::error_of;

namespace {

StratifiedComplex suspension_with_poles(const SimplicialComplex& l) {
  auto s = suspension(l);
  const Vertex top = l.vertices().back();
  auto poles = SimplicialComplex::generated_by({{top + 1}, {top + 2}});
  std::vector<SimplicialComplex> levels(s.dim(), poles);
  return StratifiedComplex(s, levels);
}

std::vector<Perversity> all_perversities(int m) {
  std::vector<Perversity> out;
  if (m < 2) return {Perversity(std::max(m, 0), {})};
  std::vector<int> v(m - 1, 0);
  // Every sequence with steps 0 or 1, p(2) = 0.
  for (int mask = 0; mask < (1 << (m - 2)); ++mask) {
    for (int k = 3; k <= m; ++k) v[k - 2] = v[k - 3] + ((mask >> (k - 3)) & 1);
    out.emplace_back(m, v);
  }
  return out;
}

std::vector<int> scaled(std::vector<int> v, int r) {
  for (auto& x : v) x *= r;
  return v;
}

}  // namespace

TEST_CASE("perversities") {
  CHECK(Perversity::lower_middle(5).values() == std::vector<int>{0, 0, 1, 1});
  CHECK(Perversity::upper_middle(5).values() == std::vector<int>{0, 1, 1, 2});
  CHECK(Perversity::top(4).values() == std::vector<int>{0, 1, 2});
  CHECK(Perversity::zero(3).values() == std::vector<int>{0, 0});
  CHECK(complementary(Perversity::lower_middle(6)) == Perversity::upper_middle(6));
  CHECK(complementary(Perversity::top(4)) == Perversity::zero(4));
  CHECK(Perversity::zero(4) <= Perversity::lower_middle(4));
  CHECK(!(Perversity::upper_middle(4) <= Perversity::lower_middle(4)));
  CHECK(Perversity::named("lower", 1).dim() == 1);
  CHECK(Perversity::lower_middle(4).at(1) == 0);
  CHECK(Perversity::lower_middle(4).truncated(3) == Perversity::lower_middle(3));
  CHECK(all_perversities(4).size() == 4);
  CHECK(error_of([] { Perversity(3, {1, 1}); }) == ErrorCode::BadPerversity);
  CHECK(error_of([] { Perversity(4, {0, 0, 2}); }) == ErrorCode::BadPerversity);
  CHECK(error_of([] { Perversity(4, {0, 0}); }) == ErrorCode::BadPerversity);
  CHECK(error_of([] { Perversity::lower_middle(1); }) == ErrorCode::BadDimension);
  CHECK(error_of([] { Perversity::lower_middle(3).at(4); }) == ErrorCode::BadDimension);
  CHECK(error_of([] { Perversity::named("middle", 3); }) == ErrorCode::BadParams);
}

TEST_CASE("allowability on a cone") {
  auto cone = cone_stratified(StratifiedComplex::unstratified(complexes::cycle(4)));
  const auto p = Perversity::zero(2);
  CHECK(!is_allowable({4}, cone, p));
  CHECK(!is_allowable({0, 4}, cone, p));
  CHECK(is_allowable({0, 1, 4}, cone, p));
  CHECK(is_allowable({0, 1}, cone, p));
  CHECK(ih_betti(cone, p) == std::vector<int>{1, 0, 0});
}

TEST_CASE("manifolds: intersection homology is ordinary homology") {
  for (const auto& c : {complexes::torus7(), complexes::rp2(), complexes::octahedron(),
                        complexes::boundary_of_simplex(4), complexes::hexagon()}) {
    auto sc = StratifiedComplex::unstratified(c);
    for (const auto& p : all_perversities(c.dim())) CHECK(ih_betti(sc, p) == betti(c));
  }
  // Branch points refine the stratification without changing IH.
  auto spec = build_cover_spec(fixtures::sphere_branched(6, 2));
  auto refined = refine_stratification(spec.base, spec.branch);
  CHECK(ih_betti(refined, Perversity::zero(2)) == std::vector<int>{1, 0, 1});
  auto unknot = build_cover_spec(fixtures::s3_unknot_double());
  auto refined3 = refine_stratification(unknot.base, unknot.branch);
  for (const auto& p : all_perversities(3)) CHECK(ih_betti(refined3, p) == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("stratified 4-manifolds, every perversity") {
  for (const auto& [name, sc] : support::stratified_4_manifolds()) {
    CAPTURE(name);
    REQUIRE(sc.levels_full());
    REQUIRE(sc.is_pseudomanifold());
    const auto b = betti(sc.complex());
    for (const auto& p : support::gm_perversities_4()) CHECK(ih_betti(sc, p) == b);
  }
}

TEST_CASE("suspensions against the cone-formula oracle") {
  auto st2 = suspension_with_poles(complexes::torus7());
  CHECK(ih_betti(st2, Perversity::lower_middle(3)) == std::vector<int>{1, 2, 0, 1});
  CHECK(ih_betti(st2, Perversity::upper_middle(3)) == std::vector<int>{1, 0, 2, 1});
  for (const auto& l : {complexes::torus7(), complexes::rp2(), complexes::octahedron(),
                        complexes::boundary_of_simplex(4), complexes::hexagon()}) {
    auto s = suspension_with_poles(l);
    for (const auto& p : all_perversities(s.dim()))
      CHECK(ih_betti(s, p) == oracle::suspension_ih(betti(l), p.at(s.dim())));
  }
}

TEST_CASE("pinched torus") {
  auto pinched = StratifiedComplex::from_descending(complexes::pinched_torus(),
                                                    {SimplicialComplex::generated_by({{0}})});
  CHECK(betti(pinched.complex()) == std::vector<int>{1, 1, 1});
  // Normalisation is a 2-sphere.
  CHECK(ih_betti(pinched, Perversity::named("lower", 2)) == betti(complexes::octahedron()));
  CHECK(ih_betti(pinched, Perversity::named("upper", 2)) == std::vector<int>{1, 0, 1});
}

TEST_CASE("explicit intersection chain complexes") {
  std::vector<StratifiedComplex> spaces{
      suspension_with_poles(complexes::torus7()),
      StratifiedComplex::from_descending(complexes::pinched_torus(),
                                         {SimplicialComplex::generated_by({{0}})}),
      suspension_with_poles(complexes::rp2())};
  for (const auto& [name, sc] : support::stratified_4_manifolds())
    if (name == "S1*S2") spaces.push_back(sc);
  for (const auto& sc : spaces)
    for (const auto& p : all_perversities(sc.dim())) {
      auto ic = intersection_chain_complex(sc, p);
      CHECK(ic.complex.is_valid());
      CHECK(betti(ic.complex) == ih_betti(sc, p));
    }
}

TEST_CASE("Poincare duality for complementary perversities") {
  auto check_dual = [](const StratifiedComplex& sc) {
    const int m = sc.dim();
    for (const auto& p : all_perversities(m)) {
      auto a = ih_betti(sc, p);
      auto b = ih_betti(sc, complementary(p));
      for (int j = 0; j <= m; ++j) CHECK(a[j] == b[m - j]);
    }
  };
  check_dual(suspension_with_poles(complexes::torus7()));
  check_dual(suspension_with_poles(complexes::boundary_of_simplex(4)));
  check_dual(StratifiedComplex::from_descending(complexes::pinched_torus(),
                                                {SimplicialComplex::generated_by({{0}})}));
}

TEST_CASE("twisted coefficients") {
  SUBCASE("trivial systems multiply") {
    auto st2 = suspension_with_poles(complexes::torus7());
    auto regular = st2.complex().full_subcomplex([&](Vertex v) { return st2.is_regular(v); });
    auto sys = LocalSystemQ::trivial(regular, 2);
    for (const auto& p : all_perversities(3)) {
      CHECK(ih_betti(st2, p, Coefficients::twisted(sys)) == scaled(ih_betti(st2, p), 2));
      auto ic = intersection_chain_complex(st2, p, Coefficients::twisted(sys));
      CHECK(ic.complex.is_valid());
      CHECK(betti(ic.complex) == ih_betti(st2, p, Coefficients::twisted(sys)));
    }
  }
  SUBCASE("sum-zero system on a branched sphere") {
    auto spec = build_cover_spec(fixtures::sphere_branched(6, 2));
    auto refined = refine_stratification(spec.base, spec.branch);
    auto kernel = trace_split(pushforward_local_system(spec.presentation, spec.monodromy)).kernel;
    const auto p = Perversity::named("lower", 2);
    CHECK(ih_betti(refined, p, Coefficients::twisted(kernel)) == std::vector<int>{0, 4, 0});
    auto ic = intersection_chain_complex(refined, p, Coefficients::twisted(kernel));
    CHECK(ic.complex.is_valid());
    CHECK(betti(ic.complex) == std::vector<int>{0, 4, 0});
  }
}

TEST_CASE("cone formula") {
  std::vector<StratifiedComplex> links{
      StratifiedComplex::unstratified(complexes::torus7()),
      StratifiedComplex::unstratified(complexes::rp2()),
      StratifiedComplex::unstratified(complexes::cycle(5)),
      StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0}, {1}})),
      StratifiedComplex::unstratified(complexes::boundary_of_simplex(4)),
      suspension_with_poles(complexes::torus7())};
  for (const auto& l : links)
    for (const auto& p : all_perversities(l.dim() + 1)) {
      auto r = cone_formula_check(l, p);
      CAPTURE(l.dim());
      CHECK(r.passed());
      CHECK(r.threshold == l.dim() - p.at(l.dim() + 1));
    }
  auto t2 = cone_formula_check(StratifiedComplex::unstratified(complexes::torus7()),
                               Perversity::lower_middle(3));
  CHECK(t2.cone_ih == std::vector<int>{1, 2, 0, 0});
  auto t2u = cone_formula_check(StratifiedComplex::unstratified(complexes::torus7()),
                                Perversity::upper_middle(3));
  CHECK(t2u.cone_ih == std::vector<int>{1, 0, 0, 0});
  auto pts = cone_formula_check(
      StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0}, {1}})),
      Perversity::zero(1));
  CHECK(pts.cone_ih == std::vector<int>{1, 0});
  CHECK(error_of([] {
          cone_formula_check(StratifiedComplex::unstratified(complexes::torus7()),
                             Perversity::lower_middle(2));
        }) == ErrorCode::BadDimension);
}

TEST_CASE("stalk checks") {
  std::vector<StratifiedComplex> spaces{
      suspension_with_poles(complexes::torus7()),
      StratifiedComplex::from_descending(complexes::pinched_torus(),
                                         {SimplicialComplex::generated_by({{0}})})};
  for (const auto& [name, sc] : support::stratified_4_manifolds()) spaces.push_back(sc);
  for (const auto& sc : spaces)
    for (const auto& p : all_perversities(sc.dim())) {
      auto r = deligne_stalk_check(sc, p);
      CHECK(r.passed());
      CHECK(r.vertices.size() == sc.singular_set().count(0));
    }
  auto pinched = deligne_stalk_check(spaces[1], Perversity::zero(2));
  REQUIRE(pinched.vertices.size() == 1);
  CHECK(pinched.vertices[0].star_ih == std::vector<int>{2, 0, 0});
  CHECK(pinched.vertices[0].link_ih == std::vector<int>{2, 2});

  auto spec = build_cover_spec(fixtures::sphere_branched(3, 3));
  auto refined = refine_stratification(spec.base, spec.branch);
  auto kernel = trace_split(pushforward_local_system(spec.presentation, spec.monodromy)).kernel;
  for (const auto& p : all_perversities(2))
    CHECK(deligne_stalk_check(refined, p, Coefficients::twisted(kernel)).passed());
}

TEST_CASE("input errors") {
  auto st2 = suspension_with_poles(complexes::torus7());
  CHECK(error_of([&] { ih_betti(st2, Perversity::lower_middle(4)); }) == ErrorCode::BadDimension);
  // Opposite octahedron vertices span no edge; adjacent ones do.
  auto poles = StratifiedComplex(complexes::octahedron(),
                                 {SimplicialComplex::generated_by({{0}, {5}})});
  CHECK(poles.levels_full());
  auto adjacent = StratifiedComplex(complexes::octahedron(),
                                    {SimplicialComplex::generated_by({{0}, {1}})});
  CHECK(!adjacent.levels_full());
  CHECK(error_of([&] { ih_betti(adjacent, Perversity::zero(2)); }) == ErrorCode::NotFull);
  CHECK(error_of([&] { deligne_stalk_check(adjacent, Perversity::zero(2)); }) ==
        ErrorCode::NotFull);
}
