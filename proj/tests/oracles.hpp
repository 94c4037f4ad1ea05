#pragma once

// Independent reference implementations for the tests: deliberately naive,
// dense and sharing no code with the library beyond the Simplex type.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "bcover/simplicial.hpp"

namespace oracle {

// Bareiss fraction-free elimination on a dense integer matrix.
inline int bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(a[0].size());
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

// Betti numbers from dense integer boundary matrices built from scratch.
inline std::vector<int> betti(const std::vector<bcover::Simplex>& all) {
  std::map<int, std::vector<bcover::Simplex>> by_dim;
  for (const auto& s : all) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
  if (by_dim.empty()) return {};
  const int top = by_dim.rbegin()->first;
  for (auto& [d, v] : by_dim) std::sort(v.begin(), v.end());
  std::vector<int> rk(top + 2, 0);
  for (int d = 1; d <= top; ++d) {
    const auto& lo = by_dim[d - 1];
    const auto& hi = by_dim[d];
    std::vector<std::vector<mpz_class>> m(lo.size(), std::vector<mpz_class>(hi.size(), 0));
    for (std::size_t j = 0; j < hi.size(); ++j)
      for (std::size_t i = 0; i < hi[j].size(); ++i) {
        auto f = hi[j];
        f.erase(f.begin() + i);
        auto row = std::lower_bound(lo.begin(), lo.end(), f) - lo.begin();
        m[row][j] = (i % 2 == 0) ? 1 : -1;
      }
    rk[d] = bareiss_rank(m);
  }
  std::vector<int> b(top + 1);
  for (int d = 0; d <= top; ++d) b[d] = static_cast<int>(by_dim[d].size()) - rk[d] - rk[d + 1];
  return b;
}

// Every simplex containing s, by scanning the whole list.
inline std::vector<bcover::Simplex> cofaces(const std::vector<bcover::Simplex>& all,
                                            const bcover::Simplex& s) {
  std::vector<bcover::Simplex> out;
  for (const auto& t : all)
    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) out.push_back(t);
  return out;
}

// Link by brute force: faces of cofaces that miss s.
inline std::set<bcover::Simplex> link(const std::vector<bcover::Simplex>& all,
                                      const bcover::Simplex& s) {
  std::set<bcover::Simplex> out;
  for (const auto& t : cofaces(all, s)) {
    bcover::Simplex rest;
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(rest));
    if (!rest.empty()) out.insert(rest);
  }
  return out;
}

// Number of components by BFS over edges.
inline int component_count(const std::vector<bcover::Simplex>& all) {
  std::map<int, std::vector<int>> adj;
  for (const auto& s : all) {
    if (s.size() == 1) adj[s[0]];
    if (s.size() == 2) {
      adj[s[0]].push_back(s[1]);
      adj[s[1]].push_back(s[0]);
    }
  }
  std::set<int> seen;
  int count = 0;
  for (const auto& [v, nbrs] : adj) {
    if (seen.count(v)) continue;
    ++count;
    std::queue<int> q;
    q.push(v);
    seen.insert(v);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (seen.insert(w).second) q.push(w);
    }
  }
  return count;
}

}  // namespace oracle

namespace oracle {

// IH of the suspension of a closed connected n-manifold whose two suspension
// points form the singular set: each half is a cone, truncated at
// t = n - p(n+1), and the halves meet along L. Mayer-Vietoris gives
// b_i(L) below t, nothing at t and b_{i-1}(L) above.
inline std::vector<int> suspension_ih(const std::vector<int>& betti_l, int p_top) {
  const int n = static_cast<int>(betti_l.size()) - 1;
  const int t = n - p_top;
  std::vector<int> out(n + 2, 0);
  out[0] = 1;
  for (int i = 1; i <= n + 1; ++i) {
    if (i < t) out[i] = betti_l[i];
    if (i > t) out[i] = betti_l[i - 1];
  }
  return out;
}

}  // namespace oracle
