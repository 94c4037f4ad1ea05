#include <random>
#include <set>

#include "bcover/complexes.hpp"
#include "bcover/covering.hpp"
#include "bcover/fixtures.hpp"
#include "bcover/spec_file.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace bcover;
using support::error_of;

namespace {

BranchedCoverSpec spec_of(const SpecFile& f) { return build_cover_spec(f); }

}  // namespace

TEST_CASE("permutations") {
  Permutation p({1, 2, 0});
  Permutation q({1, 0, 2});
  CHECK((p * q)(0) == p(q(0)));
  CHECK((p * q).image() == std::vector<int>{2, 1, 0});
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.cycle_string() == "(0 1 2)");
  CHECK(Permutation::identity(4).cycle_string() == "()");
  CHECK(Permutation::cycle(4, {3, 1}).image() == std::vector<int>{0, 3, 2, 1});
  CHECK(Permutation::shift(4, -1).image() == std::vector<int>{3, 0, 1, 2});
  CHECK(error_of([] { Permutation({0, 0}); }) == ErrorCode::NotAPermutation);
  CHECK(error_of([] { Permutation({0, 2}); }) == ErrorCode::NotAPermutation);
  CHECK(error_of([&] { (void)(p * Permutation::identity(2)); }) == ErrorCode::DegreeMismatch);
  CHECK(orbits(5, {Permutation({1, 0, 2, 4, 3})}) ==
        std::vector<std::vector<int>>{{0, 1}, {2}, {3, 4}});
  CHECK(orbits(3, {}).size() == 3);
}

TEST_CASE("edge-path presentations") {
  SUBCASE("hexagon") {
    auto p = edge_path_presentation(complexes::hexagon(), 0);
    REQUIRE(p.generators().size() == 1);
    CHECK(p.generator_name(0) == "3->4");
    CHECK(p.relators().empty());
    CHECK(p.parent(0) == std::nullopt);
    CHECK(p.parent(3) == 2);
    CHECK(p.letter(4, 3) == Letter{0, -1});
    CHECK(p.letter(0, 1) == std::nullopt);
    CHECK(error_of([&] { p.letter(0, 3); }) == ErrorCode::SimplexNotFound);
  }
  SUBCASE("octahedron has seven generators") {
    auto p = edge_path_presentation(complexes::octahedron(), 0);
    CHECK(p.generators().size() == 7);
    CHECK(p.relators().size() == 8);
  }
  SUBCASE("tree and generators partition the edges") {
    for (const auto& c : {complexes::torus7(), complexes::rp2(), complexes::pinched_torus(),
                          complexes::boundary_of_simplex(4)}) {
      const Vertex base = c.vertices().back();
      auto p = edge_path_presentation(c, base);
      CHECK(p.tree().size() == c.count(0) - 1);
      std::set<Simplex> all(p.tree().begin(), p.tree().end());
      all.insert(p.generators().begin(), p.generators().end());
      CHECK(all.size() == c.count(1));
      CHECK(std::is_sorted(p.generators().begin(), p.generators().end()));
      CHECK(p.relators().size() == c.count(2));
      for (std::size_t i = 0; i < p.generators().size(); ++i)
        CHECK(p.generator_index(p.generators()[i]) == i);
    }
  }
  SUBCASE("errors") {
    auto two = SimplicialComplex::generated_by({{0, 1}, {2, 3}});
    CHECK(error_of([&] { edge_path_presentation(two, 0); }) == ErrorCode::Disconnected);
    CHECK(error_of([] { edge_path_presentation(complexes::hexagon(), 9); }) ==
          ErrorCode::BadBasepoint);
  }
}

TEST_CASE("monodromy validation") {
  auto torus = edge_path_presentation(complexes::torus7(), 0);
  auto trivial = MonodromyRep::trivial(torus, 3);
  CHECK_NOTHROW(validate_monodromy(torus, trivial));
  auto bad = trivial;
  for (auto& g : bad.images) g = Permutation({1, 0, 2});
  bad.images[0] = Permutation({0, 2, 1});
  CHECK(error_of([&] { validate_monodromy(torus, bad); }) == ErrorCode::RelatorViolated);
  auto missing = trivial;
  missing.images.pop_back();
  CHECK(error_of([&] { validate_monodromy(torus, missing); }) == ErrorCode::MissingGenerator);
  auto wrong = trivial;
  wrong.images[1] = Permutation::identity(2);
  CHECK(error_of([&] { validate_monodromy(torus, wrong); }) == ErrorCode::DegreeMismatch);
}

TEST_CASE("random representations satisfy every relator") {
  std::mt19937 rng(7);
  for (const auto& c : {complexes::torus7(), complexes::rp2(), complexes::bouquet(3),
                        complexes::pinched_torus()}) {
    auto p = edge_path_presentation(c, 0);
    for (int d = 1; d <= 5; ++d) {
      auto rep = support::random_rep(p, d, rng);
      CHECK_NOTHROW(validate_monodromy(p, rep));
      for (const auto& w : p.relators()) CHECK(evaluate(w, rep).is_identity());
    }
  }
}

TEST_CASE("unbranched covers") {
  SUBCASE("circle") {
    auto p = edge_path_presentation(complexes::hexagon(), 0);
    MonodromyRep rep{3, {Permutation({1, 2, 0})}};
    auto x = build_cover(p, rep);
    CHECK(x.total.count(0) == 18);
    CHECK(betti(x.total) == std::vector<int>{1, 1});
    MonodromyRep split{3, {Permutation::identity(3)}};
    CHECK(betti(build_cover(p, split).total) == std::vector<int>{3, 3});
    MonodromyRep swap{3, {Permutation({1, 0, 2})}};
    CHECK(betti(build_cover(p, swap).total) == std::vector<int>{2, 2});
  }
  SUBCASE("random covers are coverings") {
    std::mt19937 rng(11);
    for (const auto& c : {complexes::torus7(), complexes::rp2(), complexes::bouquet(2)}) {
      auto p = edge_path_presentation(c, 0);
      for (int d = 2; d <= 4; ++d) {
        auto rep = support::random_rep(p, d, rng);
        auto x = build_cover(p, rep);
        for (const auto& s : c.all_simplices()) CHECK(x.fiber_size(s) == std::size_t(d));
        CHECK(x.total.size() == d * c.size());
        CHECK(x.total.euler_characteristic() == d * c.euler_characteristic());
        CHECK(betti(x.total) == oracle::betti(x.total.all_simplices()));
        CHECK(oracle::component_count(x.total.all_simplices()) ==
              static_cast<int>(orbits(d, rep.images).size()));
        for (const auto& s : x.total.all_simplices()) CHECK(x.project(s).size() == s.size());
      }
    }
  }
}

TEST_CASE("branched cover specifications") {
  auto space = prepare_space(fixtures::sphere_branched(6, 2));
  SUBCASE("branch locus in the wrong place") {
    auto oct = StratifiedComplex::unstratified(complexes::octahedron());
    auto edge = StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0, 1}}));
    auto p = BranchedCoverSpec::complement_presentation(space.base, space.branch.complex(), 6);
    CHECK(error_of([&] {
            BranchedCoverSpec::make(oct, edge, 2, MonodromyRep::trivial(p, 2));
          }) == ErrorCode::BranchNotInCodim2Level);
    auto outside = StratifiedComplex::unstratified(SimplicialComplex::generated_by({{40}}));
    CHECK(error_of([&] { BranchedCoverSpec::make(oct, outside, 2, {}); }) ==
          ErrorCode::NotASubcomplex);
    auto pair = StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0}, {1}}));
    auto s3 = StratifiedComplex::unstratified(complexes::boundary_of_simplex(4));
    CHECK(error_of([&] { BranchedCoverSpec::make(s3, pair, 2, {}); }) == ErrorCode::NotFull);
    CHECK(error_of([&] {
            BranchedCoverSpec::complement_presentation(space.base, space.branch.complex(), 0);
          }) == ErrorCode::BadBasepoint);
  }
  SUBCASE("base must be a pseudomanifold") {
    auto bouquet = StratifiedComplex::unstratified(complexes::bouquet(2));
    CHECK(error_of([&] { BranchedCoverSpec::make(bouquet, {}, 1, {}); }) ==
          ErrorCode::NotPseudomanifold);
  }
}

TEST_CASE("local monodromy and fibers") {
  auto genus2 = spec_of(fixtures::sphere_branched(6, 2));
  for (Vertex v : genus2.branch.complex().vertices()) {
    auto group = local_monodromy_group(genus2, {v});
    REQUIRE(group.size() == 1);
    CHECK(group[0] == Permutation({1, 0}));
    CHECK(fiber_cardinality(genus2, {v}) == 1);
  }
  CHECK(error_of([&] { local_monodromy_group(genus2, {genus2.presentation.basepoint()}); }) ==
        ErrorCode::SimplexNotInBranchLocus);

  auto triple = spec_of(fixtures::sphere_branched(3, 3));
  for (Vertex v : triple.branch.complex().vertices()) CHECK(fiber_cardinality(triple, {v}) == 1);

  // Unbranched points declared as branch locus keep full fibers.
  auto point = spec_of(fixtures::s3_point(3));
  CHECK(local_monodromy_group(point, {0}) == std::vector<Permutation>{Permutation::identity(3)});
  CHECK(fiber_cardinality(point, {0}) == 3);
}

TEST_CASE("completed branched covers") {
  struct Case {
    SpecFile spec;
    std::vector<int> betti;
  };
  std::vector<Case> cases{{fixtures::sphere_branched(6, 2), {1, 4, 1}},
                          {fixtures::sphere_branched(4, 2), {1, 2, 1}},
                          {fixtures::sphere_branched(2, 2), {1, 0, 1}},
                          {fixtures::sphere_branched(3, 3), {1, 2, 1}},
                          {fixtures::sphere_branched(0, 2), {2, 0, 2}},
                          {fixtures::s3_unknot_double(), {1, 0, 0, 1}},
                          {fixtures::s3_point(2), {2, 0, 0, 2}}};
  for (const auto& c : cases) {
    auto spec = spec_of(c.spec);
    auto x = fox_complete(spec);
    CHECK(betti(x.total) == c.betti);
    CHECK(oracle::betti(x.total.all_simplices()) == c.betti);
    // Manifold covers: every codimension-1 simplex has exactly two cofaces.
    const int m = spec.dim();
    for (const auto& s : x.total.simplices(m - 1))
      CHECK(oracle::cofaces(x.total.simplices(m), s).size() == 2);
    for (const auto& [tau, orbit_count] : x.branch_orbits)
      CHECK(x.fiber_size(tau) == std::size_t(orbit_count));
    auto rh = riemann_hurwitz_check(x);
    CHECK(rh.chi_homology == rh.chi_combinatorial);
  }
}

TEST_CASE("punctured stars must be connected") {
  // The pinch point of a pinched torus has a two-circle link.
  auto pinched = StratifiedComplex::from_descending(
      complexes::pinched_torus(), {SimplicialComplex::generated_by({{0}})});
  auto r = StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0}}));
  auto report = punctured_star_connectivity(pinched.complex(), r.complex());
  REQUIRE(report.downstairs.size() == 1);
  CHECK(report.downstairs[0].components == 2);
  CHECK(!report.passed());
  CHECK(report.failing() == std::vector<Simplex>{{0}});
  auto p = BranchedCoverSpec::complement_presentation(pinched, r.complex(), 1);
  auto spec = BranchedCoverSpec::make(pinched, r, 1, MonodromyRep::trivial(p, 2));
  CHECK(error_of([&] { fox_complete(spec); }) == ErrorCode::DisconnectedPuncturedStar);
  CHECK(error_of([&] { local_monodromy_group(spec, {0}); }) ==
        ErrorCode::DisconnectedPuncturedStar);

  auto ok = complement_connectivity_check(spec_of(fixtures::sphere_branched(6, 2)));
  CHECK(ok.passed());
  CHECK(ok.downstairs.size() == 6);
  CHECK(ok.upstairs.size() == 6);
}

TEST_CASE("refined and pulled-back stratifications") {
  SUBCASE("points on a sphere") {
    auto spec = spec_of(fixtures::sphere_branched(4, 2));
    auto refined = refine_stratification(spec.base, spec.branch);
    CHECK(refined.level(0) == spec.branch.complex());
    CHECK(refined.level(1) == spec.branch.complex());
    CHECK(refined.is_pseudomanifold());
    auto x = fox_complete(spec);
    auto pulled = pullback_stratification(x, refined);
    CHECK(pulled.is_pseudomanifold());
    CHECK(pulled.levels_full());
    CHECK(pulled.level(0).count(0) == 4);
    for (const auto& s : pulled.level(0).all_simplices())
      CHECK(refined.level(0).contains(x.project(s)));
  }
  SUBCASE("branch arc through singular points") {
    auto sus = support::suspended(fixtures::sphere_branched(2, 2));
    auto spec = spec_of(sus);
    auto refined = refine_stratification(spec.base, spec.branch);
    CHECK(refined.is_pseudomanifold());
    CHECK(refined.levels_full());
    CHECK(refined.level(0).count(0) == 2);
    CHECK(refined.level(1) == spec.branch.complex());
    auto strata = refined.strata();
    CHECK(strata.size() == 5);  // two poles, two open arcs, the rest
    auto x = fox_complete(spec);
    auto pulled = pullback_stratification(x, refined);
    CHECK(pulled.is_pseudomanifold());
    CHECK(pulled.levels_full());
  }
  SUBCASE("the branch locus must sit in codimension 2") {
    auto oct = StratifiedComplex::unstratified(complexes::octahedron());
    auto edge = StratifiedComplex::unstratified(SimplicialComplex::generated_by({{0, 1}}));
    CHECK(error_of([&] { refine_stratification(oct, edge); }) ==
          ErrorCode::BranchNotInCodim2Level);
  }
}

TEST_CASE("Riemann-Hurwitz") {
  for (int k : {0, 1, 2}) {
    auto x = fox_complete(spec_of(fixtures::sphere_branched(2 * k + 2, 2)));
    auto rh = riemann_hurwitz_check(x);
    CHECK(rh.chi_homology == 2 - 2 * k);
    CHECK(rh.chi_combinatorial == 2 - 2 * k);
    CHECK(rh.betti == std::vector<int>{1, 2 * k, 1});
  }
  // A cover whose recorded branch orbits are wrong fails the identity.
  auto x = fox_complete(spec_of(fixtures::sphere_branched(2, 2)));
  x.branch_orbits.begin()->second = 2;
  CHECK(error_of([&] { riemann_hurwitz_check(x); }) == ErrorCode::ChiMismatch);
}
