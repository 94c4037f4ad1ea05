#include "bcover/fixtures.hpp"

#include <algorithm>

#include "bcover/complexes.hpp"
#include "bcover/error.hpp"
#include "bcover/linalg.hpp"

namespace bcover {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

int mod(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

int inverse_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = static_cast<int>(1LL * b * b % p))
    if (e & 1) r = static_cast<int>(1LL * r * b % p);
  return r;
}

// Row reduction of [A | b] over GF(p). Returns pivot columns; the matrix is
// left in reduced form.
std::vector<int> reduce_mod_p(std::vector<std::vector<int>>& rows, int cols, int p) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c] == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    int inv = inverse_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = static_cast<int>(1LL * x * inv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      int f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        rows[i][j] = mod(rows[i][j] - 1LL * f * rows[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// One solution of A x = b with free variables 0, or nullopt.
std::optional<std::vector<int>> solve_mod_p(std::vector<std::vector<int>> rows, int cols, int p) {
  auto pivots = reduce_mod_p(rows, cols, p);
  for (std::size_t i = pivots.size(); i < rows.size(); ++i)
    if (rows[i][cols] != 0) return std::nullopt;
  std::vector<int> x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][cols];
  return x;
}

std::vector<std::vector<int>> nullspace_mod_p(std::vector<std::vector<int>> rows, int cols, int p) {
  auto pivots = reduce_mod_p(rows, cols, p);
  std::vector<std::vector<int>> out;
  for (int f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<int> x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = mod(-rows[i][f], p);
    out.push_back(std::move(x));
  }
  return out;
}

// Relator rows (abelianized) of a presentation, with an extra zero column
// for a right-hand side.
std::vector<std::vector<int>> relator_rows(const EdgePathPresentation& pres, int p) {
  const int n = static_cast<int>(pres.generators().size());
  std::vector<std::vector<int>> rows;
  for (const auto& w : pres.relators()) {
    std::vector<int> row(n + 1, 0);
    for (const auto& l : w) row[l.generator] = mod(row[l.generator] + l.exponent, p);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Writes abelian Z/p monodromy x into the spec as shift permutations.
void assign_cyclic(SpecFile& spec, const EdgePathPresentation& pres, int degree,
                   const std::vector<int>& x) {
  MonodromyInput in;
  in.degree = degree;
  in.basepoint = pres.basepoint();
  for (std::size_t i = 0; i < x.size(); ++i)
    in.assignments[pres.generator_name(i)] = Permutation::shift(degree, x[i]).image();
  spec.monodromy = std::move(in);
}

std::vector<std::vector<Simplex>> single_level(const std::vector<Simplex>& s, int copies) {
  return std::vector<std::vector<Simplex>>(copies, s);
}

}  // namespace

namespace fixtures {

std::vector<Simplex> simplex_list(const SimplicialComplex& c) { return c.all_simplices(); }

std::vector<std::vector<int>> cocycle_basis_mod_p(const EdgePathPresentation& p, int prime) {
  if (!is_prime(prime)) throw Error(ErrorCode::BadParams, "modulus must be prime");
  const int n = static_cast<int>(p.generators().size());
  return nullspace_mod_p(relator_rows(p, prime), n, prime);
}

SpecFile sphere_branched(int points, int degree, std::optional<std::vector<int>> exponents) {
  static const std::vector<Vertex> order{0, 5, 1, 3, 2, 4};
  if (points < 0 || points > 6)
    throw Error(ErrorCode::BadParams, "points must be between 0 and 6");
  if (!is_prime(degree)) throw Error(ErrorCode::BadParams, "degree must be prime");
  std::vector<int> e = exponents.value_or(std::vector<int>(points, 1));
  if (static_cast<int>(e.size()) != points)
    throw Error(ErrorCode::BadParams, "expected one exponent per branch point");
  long long sum = 0;
  for (int v : e) {
    if (v < 1 || v >= degree)
      throw Error(ErrorCode::BadParams, "exponents must lie between 1 and degree - 1");
    sum += v;
  }
  if (sum % degree != 0)
    throw Error(ErrorCode::BadParams, "exponents must sum to 0 modulo the degree");

  SpecFile spec;
  spec.complex = simplex_list(complexes::octahedron());
  for (int i = 0; i < points; ++i) spec.branch.push_back({order[i]});
  std::sort(spec.branch.begin(), spec.branch.end());
  spec.options.subdivisions = 1;

  auto space = prepare_space(spec);
  auto pres = prepare_presentation(spec, space);
  const auto& y = space.base.complex();
  const int n = static_cast<int>(pres.generators().size());
  auto rows = relator_rows(pres, degree);

  // A coherent orientation turns the link of a branch point into a loop.
  auto fundamental = kernel_basis(chain_complex(y).boundaries[2]);
  std::vector<int> orient(y.count(2), 0);
  for (const auto& [i, v] : fundamental.at(0)) orient[i] = v > 0 ? 1 : -1;
  for (int i = 0; i < points; ++i) {
    const Vertex r = order[i];
    std::vector<int> row(n + 1, 0);
    const auto& tris = y.simplices(2);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      auto at = std::find(tris[t].begin(), tris[t].end(), r);
      if (at == tris[t].end()) continue;
      const int k = static_cast<int>(at - tris[t].begin());
      Simplex edge;
      for (Vertex v : tris[t])
        if (v != r) edge.push_back(v);
      if (auto g = pres.generator_index(edge)) {
        int sign = orient[t] * (k % 2 == 0 ? 1 : -1);
        row[*g] = mod(row[*g] + sign, degree);
      }
    }
    row[n] = mod(e[i], degree);
    rows.push_back(std::move(row));
  }
  auto x = solve_mod_p(std::move(rows), n, degree);
  if (!x) throw Error(ErrorCode::BadParams, "no monodromy with these exponents");
  assign_cyclic(spec, pres, degree, *x);
  return spec;
}

SpecFile s3_unknot_double() {
  SpecFile spec;
  spec.complex = simplex_list(complexes::boundary_of_simplex(4));
  spec.branch = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  spec.options.subdivisions = 1;
  auto space = prepare_space(spec);
  auto pres = prepare_presentation(spec, space);
  auto null = cocycle_basis_mod_p(pres, 2);
  if (null.size() != 1)
    throw Error(ErrorCode::BadParams, "unexpected first cohomology of the knot complement");
  assign_cyclic(spec, pres, 2, null[0]);
  return spec;
}

SpecFile suspension_torus() {
  SpecFile spec;
  spec.complex = simplex_list(suspension(complexes::torus7()));
  spec.stratification = single_level({{7}, {8}}, 2);
  return spec;
}

SpecFile pinched_torus() {
  SpecFile spec;
  spec.complex = simplex_list(complexes::pinched_torus());
  spec.stratification = {{{0}}};
  return spec;
}

SpecFile circle_cover(const Permutation& perm) {
  SpecFile spec;
  spec.complex = simplex_list(complexes::hexagon());
  MonodromyInput in;
  in.degree = perm.degree();
  in.basepoint = 0;
  in.assignments["3->4"] = perm.image();
  spec.monodromy = std::move(in);
  return spec;
}

SpecFile s3_point(int degree) {
  if (degree < 1) throw Error(ErrorCode::BadParams, "degree must be at least 1");
  SpecFile spec;
  spec.complex = simplex_list(complexes::boundary_of_simplex(4));
  spec.branch = {{0}};
  auto space = prepare_space(spec);
  auto pres = prepare_presentation(spec, space);
  MonodromyInput in;
  in.degree = degree;
  in.basepoint = pres.basepoint();
  for (std::size_t i = 0; i < pres.generators().size(); ++i)
    in.assignments[pres.generator_name(i)] = Permutation::identity(degree).image();
  spec.monodromy = std::move(in);
  return spec;
}

}  // namespace fixtures

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"sphere-branched", "s3-unknot-double",
                                              "suspension-torus", "pinched-torus",
                                              "circle-cover"};
  return names;
}

SpecFile make_fixture(const std::string& name, const FixtureParams& params) {
  auto unused = [&](bool points, bool degree, bool perm, bool exponents) {
    if ((params.points && !points) || (params.degree && !degree) || (params.perm && !perm) ||
        (params.exponents && !exponents))
      throw Error(ErrorCode::BadParams, "parameter not accepted by fixture " + name);
  };
  if (name == "sphere-branched") {
    unused(true, true, false, true);
    return fixtures::sphere_branched(params.points.value_or(6), params.degree.value_or(2),
                                     params.exponents);
  }
  if (name == "s3-unknot-double") {
    unused(false, false, false, false);
    return fixtures::s3_unknot_double();
  }
  if (name == "suspension-torus") {
    unused(false, false, false, false);
    return fixtures::suspension_torus();
  }
  if (name == "pinched-torus") {
    unused(false, false, false, false);
    return fixtures::pinched_torus();
  }
  if (name == "circle-cover") {
    unused(false, true, true, false);
    const int d = params.degree.value_or(params.perm ? static_cast<int>(params.perm->size()) : 3);
    if (d < 1) throw Error(ErrorCode::BadParams, "degree must be at least 1");
    std::vector<int> image = params.perm.value_or(Permutation::shift(d, 1).image());
    if (static_cast<int>(image.size()) != d)
      throw Error(ErrorCode::BadParams, "perm has length " + std::to_string(image.size()) +
                                            ", expected " + std::to_string(d));
    try {
      return fixtures::circle_cover(Permutation(std::move(image)));
    } catch (const Error& e) {
      throw Error(ErrorCode::BadParams, "perm is not a permutation of 0.." + std::to_string(d - 1));
    }
  }
  throw Error(ErrorCode::UnknownFixture, "no fixture named \"" + name + "\"");
}

}  // namespace bcover
