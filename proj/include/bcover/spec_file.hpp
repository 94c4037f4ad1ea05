#pragma once

// JSON specification files.
//
// {
//   "complex": [[0], [1], [0, 1], ...],
//   "stratification": [X_{m-2}, X_{m-3}, ...],          optional
//   "branch": [[...], ...],                              optional
//   "branch_stratification": [R_{r-1}, R_{r-2}, ...],    optional
//   "monodromy": {"degree": 2, "basepoint": 6,
//                 "assignments": {"6->9": [1, 0], ...}}, optional
//   "options": {"perversity": "lower", "subdivisions": 1} optional
// }
//
// Filtration levels are simplex lists. Vertex ids in "monodromy" refer to
// the complex after the requested number of barycentric subdivisions; every
// generator of the complement presentation needs an assignment, and a key
// "b->a" for generator "a->b" assigns the inverse.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcover/covering.hpp"
#include "bcover/simplicial.hpp"

namespace bcover {

struct MonodromyInput {
  int degree = 1;
  Vertex basepoint = 0;
  std::map<std::string, std::vector<int>> assignments;
};

struct SpecOptions {
  std::string perversity = "lower";
  int subdivisions = 0;
};

struct SpecFile {
  std::vector<Simplex> complex;
  std::vector<std::vector<Simplex>> stratification;
  std::vector<Simplex> branch;
  std::vector<std::vector<Simplex>> branch_stratification;
  std::optional<MonodromyInput> monodromy;
  SpecOptions options;
};

/// Throws ParseError naming the offending field.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec(const std::filesystem::path& path);
/// Canonical JSON text; parse_spec(dump_spec(s)) reproduces s.
std::string dump_spec(const SpecFile& spec);

/// Base and branch locus after validation and subdivision.
struct PreparedSpace {
  StratifiedComplex base;
  StratifiedComplex branch;
};

PreparedSpace prepare_space(const SpecFile& spec);
/// Presentation of the complement with the file's basepoint, or the least
/// complement vertex when the file has no monodromy.
EdgePathPresentation prepare_presentation(const SpecFile& spec, const PreparedSpace& space);
/// Throws MissingGenerator, ParseError, NotAPermutation, DegreeMismatch.
MonodromyRep resolve_monodromy(const EdgePathPresentation& p, const MonodromyInput& input);
/// Full pipeline up to a validated cover specification.
BranchedCoverSpec build_cover_spec(const SpecFile& spec);

/// "a->b" parsed into its endpoints.
std::pair<Vertex, Vertex> parse_edge_name(const std::string& name);

}  // namespace bcover
