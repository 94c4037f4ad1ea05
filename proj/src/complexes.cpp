#include "bcover/complexes.hpp"

#include <algorithm>

namespace bcover::complexes {

SimplicialComplex cycle(int n) {
  std::vector<Simplex> edges;
  for (int i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return SimplicialComplex::generated_by(std::move(edges));
}

SimplicialComplex hexagon() { return cycle(6); }

SimplicialComplex simplex(int n) {
  Simplex s(n + 1);
  for (int i = 0; i <= n; ++i) s[i] = i;
  return SimplicialComplex::generated_by({s});
}

SimplicialComplex boundary_of_simplex(int n) {
  Simplex s(n + 1);
  for (int i = 0; i <= n; ++i) s[i] = i;
  return SimplicialComplex::generated_by(boundary_faces(s));
}

SimplicialComplex octahedron() {
  std::vector<Simplex> tris;
  const int ring[4] = {1, 2, 3, 4};
  for (int i = 0; i < 4; ++i) {
    int a = ring[i], b = ring[(i + 1) % 4];
    if (a > b) std::swap(a, b);
    tris.push_back({0, a, b});
    tris.push_back({a, b, 5});
  }
  return SimplicialComplex::generated_by(std::move(tris));
}

SimplicialComplex torus7() {
  std::vector<Simplex> tris;
  for (int i = 0; i < 7; ++i) {
    tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::generated_by(std::move(tris));
}

SimplicialComplex rp2() {
  return SimplicialComplex::generated_by({{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                          {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

SimplicialComplex bouquet(int k) {
  std::vector<Simplex> edges;
  for (int i = 0; i < k; ++i) {
    const int a = 2 * i + 1, b = 2 * i + 2;
    edges.push_back({0, a});
    edges.push_back({0, b});
    edges.push_back({a, b});
  }
  return SimplicialComplex::generated_by(std::move(edges));
}

SimplicialComplex pinched_torus() {
  Subdivision sd(octahedron());
  const Vertex north = sd.vertex_of({0});
  const Vertex south = sd.vertex_of({5});
  std::vector<Simplex> glued;
  for (auto s : sd.result().facets()) {
    for (auto& v : s) {
      if (v == south) v = north;
      else if (v > south) --v;
    }
    std::sort(s.begin(), s.end());
    glued.push_back(std::move(s));
  }
  return SimplicialComplex::generated_by(std::move(glued));
}

}  // namespace bcover::complexes
