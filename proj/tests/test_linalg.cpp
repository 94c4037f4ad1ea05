#include "doctest.h"

#include <random>

#include "bcover/linalg.hpp"
#include "oracles.hpp"

using namespace bcover;

namespace {

SparseMatrixQ dense_to_sparse(const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  SparseMatrixQ m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    SparseVectorQ col;
    for (std::size_t i = 0; i < r; ++i)
      if (rows[i][j]) col.emplace_back(i, Rational(rows[i][j]));
    m.set_column(j, col);
  }
  return m;
}

std::vector<std::vector<int>> random_matrix(std::mt19937& rng, int r, int c, int rank_cap) {
  // Product of an r x k and a k x c matrix, so the rank is at most k.
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<std::vector<int>> a(r, std::vector<int>(rank_cap)), b(rank_cap, std::vector<int>(c));
  for (auto& row : a)
    for (auto& x : row) x = entry(rng);
  for (auto& row : b)
    for (auto& x : row) x = entry(rng);
  std::vector<std::vector<int>> m(r, std::vector<int>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      for (int k = 0; k < rank_cap; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

}  // namespace

TEST_CASE("normalized merges and drops zeros") {
  SparseVectorQ v{{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}, {0, Rational(0)}};
  auto n = normalized(v);
  REQUIRE(n.size() == 1);
  CHECK(n[0].first == 1);
  CHECK(n[0].second == 2);
}

TEST_CASE("rank agrees with dense Bareiss on random integer matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + trial % 9, c = 1 + (trial * 5) % 11, k = 1 + trial % 5;
    auto m = random_matrix(rng, r, c, k);
    std::vector<std::vector<mpz_class>> z(r, std::vector<mpz_class>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) z[i][j] = m[i][j];
    CHECK(rank(dense_to_sparse(m)) == static_cast<std::size_t>(oracle::bareiss_rank(z)));
  }
}

TEST_CASE("kernel basis spans the kernel in echelon form") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 2 + trial % 6, c = 3 + trial % 8;
    auto dense = random_matrix(rng, r, c, 1 + trial % 4);
    auto m = dense_to_sparse(dense);
    auto basis = kernel_basis(m);
    CHECK(basis.size() + rank(m) == m.cols());
    std::size_t last_lead = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& v = basis[i];
      REQUIRE(!v.empty());
      CHECK(m.apply(v).empty());
      CHECK(v.back().second > 0);
      if (i > 0) CHECK(v.back().first > last_lead);
      last_lead = v.back().first;
      for (const auto& [idx, x] : v) CHECK(x.get_den() == 1);
    }
    // Coordinates of a random combination come back exactly.
    SparseVectorQ combo;
    std::vector<Rational> coeff(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      coeff[i] = Rational(static_cast<int>(i) - 2, 3);
      coeff[i].canonicalize();
      combo = linear_combination(1, combo, coeff[i], basis[i]);
    }
    auto coords = echelon_coordinates(basis, combo);
    REQUIRE(coords.has_value());
    for (const auto& [i, x] : *coords) CHECK(x == coeff[i]);
  }
}

TEST_CASE("echelon_coordinates rejects vectors outside the span") {
  SparseVectorQ e0{{0, Rational(1)}};
  SparseVectorQ e1{{1, Rational(1)}};
  CHECK_FALSE(echelon_coordinates({e0}, e1).has_value());
}

TEST_CASE("QMatrix inverse, kernel and rank") {
  auto m = QMatrix::from_rows({{2, 1}, {1, 1}});
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK((m * *inv).is_identity());
  auto singular = QMatrix::from_rows({{1, 2}, {2, 4}});
  CHECK_FALSE(singular.inverse().has_value());
  CHECK(singular.rank() == 1);
  auto ker = singular.kernel();
  REQUIRE(ker.size() == 1);
  CHECK(singular.apply(ker[0]) == std::vector<Rational>{0, 0});
  auto perm = QMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK((perm * perm * perm).is_identity());
  CHECK(perm.to_sparse().at(1, 0) == 1);
}

TEST_CASE("sparse matrix products and selections") {
  auto a = dense_to_sparse({{1, 2}, {0, 1}, {3, 0}});
  auto b = dense_to_sparse({{1, 0, 1}, {0, 1, 1}});
  auto ab = a * b;
  CHECK(ab == dense_to_sparse({{1, 2, 3}, {0, 1, 1}, {3, 0, 3}}));
  CHECK(ab.select({0, 2}, {2}) == dense_to_sparse({{3}, {3}}));
  CHECK(rank(SparseMatrixQ(0, 4)) == 0);
  CHECK(kernel_basis(SparseMatrixQ(0, 3)).size() == 3);
}
