#pragma once

// Built-in example specifications.

#include <optional>
#include <string>
#include <vector>

#include "bcover/permutation.hpp"
#include "bcover/spec_file.hpp"

namespace bcover {

struct FixtureParams {
  std::optional<int> points;
  std::optional<int> degree;
  std::optional<std::vector<int>> perm;
  std::optional<std::vector<int>> exponents;
};

/// Names accepted by make_fixture.
const std::vector<std::string>& fixture_names();

/// Throws UnknownFixture or BadParams.
SpecFile make_fixture(const std::string& name, const FixtureParams& params = {});

namespace fixtures {

/// Cyclic cover of the octahedral 2-sphere branched over up to six of its
/// vertices. degree must be prime, exponents are the local monodromies
/// (default all 1) and must sum to 0 mod degree. Subdivided once.
SpecFile sphere_branched(int points, int degree, std::optional<std::vector<int>> exponents = {});
/// Double cover of the 3-sphere (boundary of the 4-simplex) branched over the
/// boundary of a triangle.
SpecFile s3_unknot_double();
/// Suspension of the seven-vertex torus with both suspension points singular.
SpecFile suspension_torus();
/// Pinched torus with the pinch point as the singular stratum.
SpecFile pinched_torus();
/// Cover of the hexagon given by one permutation.
SpecFile circle_cover(const Permutation& perm);
/// Unbranched degree-d cover of the 3-sphere with a vertex declared as the
/// branch locus (codimension 3).
SpecFile s3_point(int degree);

/// Basis of the Z/p 1-cocycles of a presentation (generator values with all
/// relators summing to 0 mod p). p must be prime.
std::vector<std::vector<int>> cocycle_basis_mod_p(const EdgePathPresentation& p, int prime);

/// Simplex list of a complex, usable in a SpecFile.
std::vector<Simplex> simplex_list(const SimplicialComplex& c);

}  // namespace fixtures
}  // namespace bcover
