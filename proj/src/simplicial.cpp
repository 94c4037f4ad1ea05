#include "bcover/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>
#include <string>

#include "bcover/error.hpp"

namespace bcover {

std::string format_simplex(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

namespace {

const SimplicialComplex& empty_complex() {
  static const SimplicialComplex e;
  return e;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

Vertex max_vertex(const SimplicialComplex& c) {
  return c.vertices().empty() ? -1 : c.vertices().back();
}

Simplex merged(const Simplex& a, const Simplex& b) {
  Simplex out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = s.size();
  for (Vertex v : s) h ^= std::hash<Vertex>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::vector<Simplex> boundary_faces(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != i) f.push_back(s[k]);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Simplex> all_faces(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Simplex f;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) f.push_back(s[k]);
    out.push_back(std::move(f));
  }
  return out;
}

bool is_face_of(const Simplex& face, const Simplex& s) {
  return std::includes(s.begin(), s.end(), face.begin(), face.end());
}

int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

SimplicialComplex SimplicialComplex::assemble(std::vector<Simplex> simplices) {
  SimplicialComplex c;
  for (auto& s : simplices) {
    const auto d = s.size() - 1;
    if (c.by_dim_.size() <= d) c.by_dim_.resize(d + 1);
    c.by_dim_[d].push_back(std::move(s));
  }
  for (auto& layer : c.by_dim_) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
  }
  c.build_indices();
  return c;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  for (const auto& s : simplices) {
    if (s.empty()) throw Error(ErrorCode::NonAscendingTuple, "empty tuple");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0) throw Error(ErrorCode::InvalidVertex, "negative vertex id in " + format_simplex(s));
      if (i > 0 && s[i - 1] >= s[i])
        throw Error(ErrorCode::NonAscendingTuple, format_simplex(s) + " is not strictly ascending");
    }
  }
  std::unordered_map<Simplex, int, SimplexHash> seen;
  for (const auto& s : simplices)
    if (seen[s]++ > 0) throw Error(ErrorCode::DuplicateSimplex, format_simplex(s) + " listed twice");
  for (const auto& s : simplices)
    for (const auto& f : boundary_faces(s))
      if (!seen.count(f))
        throw Error(ErrorCode::MissingFace, "face " + format_simplex(f) + " of " + format_simplex(s) + " is not listed");
  return assemble(std::move(simplices));
}

SimplicialComplex SimplicialComplex::generated_by(std::vector<Simplex> simplices) {
  std::unordered_set<Simplex, SimplexHash> closure;
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) continue;
    if (closure.count(s)) continue;
    for (auto& f : all_faces(s)) closure.insert(std::move(f));
  }
  return assemble(std::vector<Simplex>(closure.begin(), closure.end()));
}

void SimplicialComplex::build_indices() {
  index_.assign(by_dim_.size(), {});
  offsets_.assign(by_dim_.size() + 1, 0);
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    auto& idx = index_[d];
    idx.reserve(by_dim_[d].size());
    for (std::size_t i = 0; i < by_dim_[d].size(); ++i) idx.emplace(by_dim_[d][i], i);
    offsets_[d + 1] = offsets_[d] + by_dim_[d].size();
  }

  vertices_.clear();
  if (!by_dim_.empty())
    for (const auto& s : by_dim_[0]) vertices_.push_back(s[0]);

  adjacency_.clear();
  for (Vertex v : vertices_) adjacency_[v];
  if (by_dim_.size() > 1) {
    for (const auto& e : by_dim_[1]) {
      adjacency_[e[0]].push_back(e[1]);
      adjacency_[e[1]].push_back(e[0]);
    }
    for (auto& [v, nbrs] : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  facets_.clear();
  vertex_facets_.clear();
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    std::vector<char> covered(by_dim_[d].size(), 0);
    if (d + 1 < by_dim_.size())
      for (const auto& s : by_dim_[d + 1])
        for (const auto& f : boundary_faces(s)) covered[index_[d].at(f)] = 1;
    for (std::size_t i = 0; i < by_dim_[d].size(); ++i)
      if (!covered[i]) facets_.push_back(by_dim_[d][i]);
  }
  std::sort(facets_.begin(), facets_.end());
  for (std::size_t i = 0; i < facets_.size(); ++i)
    for (Vertex v : facets_[i]) vertex_facets_[v].push_back(i);
}

std::size_t SimplicialComplex::size() const { return offsets_.empty() ? 0 : offsets_.back(); }

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > dim()) return 0;
  return by_dim_[d].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
  static const std::vector<Simplex> none;
  if (d < 0 || d > dim()) return none;
  return by_dim_[d];
}

std::vector<Simplex> SimplicialComplex::all_simplices() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (const auto& layer : by_dim_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

const std::vector<std::size_t>& SimplicialComplex::facets_containing(Vertex v) const {
  static const std::vector<std::size_t> none;
  auto it = vertex_facets_.find(v);
  return it == vertex_facets_.end() ? none : it->second;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
  const auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SimplicialComplex::global_index(const Simplex& s) const {
  auto i = index_of(s);
  if (!i) return std::nullopt;
  return offsets_[s.size() - 1] + *i;
}

bool SimplicialComplex::has_vertex(Vertex v) const { return adjacency_.count(v) > 0; }

std::vector<Vertex> SimplicialComplex::neighbors(Vertex v) const {
  auto it = adjacency_.find(v);
  return it == adjacency_.end() ? std::vector<Vertex>{} : it->second;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[d].size());
  return chi;
}

SimplicialComplex SimplicialComplex::full_subcomplex(
    const std::function<bool(Vertex)>& pred) const {
  std::vector<Simplex> kept;
  for (const auto& layer : by_dim_)
    for (const auto& s : layer)
      if (std::all_of(s.begin(), s.end(), pred)) kept.push_back(s);
  return assemble(std::move(kept));
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& ambient) const {
  for (const auto& layer : by_dim_)
    for (const auto& s : layer)
      if (!ambient.contains(s)) return false;
  return true;
}

bool SimplicialComplex::is_full_in(const SimplicialComplex& ambient) const {
  if (!is_subcomplex_of(ambient)) return false;
  for (int d = 1; d <= ambient.dim(); ++d)
    for (const auto& s : ambient.simplices(d))
      if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return has_vertex(v); }) && !contains(s))
        return false;
  return true;
}

SimplicialComplex validate_complex(std::vector<Simplex> raw) {
  return SimplicialComplex::from_simplices(std::move(raw));
}

SimplicialComplex star(const SimplicialComplex& c, const Simplex& s) {
  if (!c.contains(s)) throw Error(ErrorCode::SimplexNotFound, format_simplex(s) + " is not in the complex");
  std::vector<Simplex> cofacets;
  for (std::size_t i : c.facets_containing(s[0]))
    if (is_face_of(s, c.facets()[i])) cofacets.push_back(c.facets()[i]);
  return SimplicialComplex::generated_by(std::move(cofacets));
}

SimplicialComplex link(const SimplicialComplex& c, const Simplex& s) {
  const auto st = star(c, s);
  std::vector<Simplex> kept;
  for (const auto& t : st.all_simplices()) {
    bool disjoint = std::none_of(t.begin(), t.end(), [&](Vertex v) {
      return std::binary_search(s.begin(), s.end(), v);
    });
    if (disjoint) kept.push_back(t);
  }
  return SimplicialComplex::generated_by(std::move(kept));
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  for (Vertex v : a.vertices())
    if (b.has_vertex(v))
      throw Error(ErrorCode::BadParams, "join of complexes sharing vertex " + std::to_string(v));
  auto left = a.all_simplices();
  auto right = b.all_simplices();
  std::vector<Simplex> out = left;
  out.insert(out.end(), right.begin(), right.end());
  for (const auto& s : a.facets())
    for (const auto& t : b.facets()) out.push_back(merged(s, t));
  return SimplicialComplex::generated_by(std::move(out));
}

SimplicialComplex cone(const SimplicialComplex& c, Vertex apex) {
  return join(c, SimplicialComplex::generated_by({{apex}}));
}

SimplicialComplex cone(const SimplicialComplex& c) { return cone(c, max_vertex(c) + 1); }

SimplicialComplex suspension(const SimplicialComplex& c) {
  const Vertex top = max_vertex(c);
  auto facets = cone(c, top + 1).facets();
  const auto lower = cone(c, top + 2).facets();
  facets.insert(facets.end(), lower.begin(), lower.end());
  return SimplicialComplex::generated_by(std::move(facets));
}

std::vector<std::vector<Vertex>> components(const SimplicialComplex& c) {
  const auto& verts = c.vertices();
  UnionFind uf(verts.size());
  auto pos = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  for (const auto& e : c.simplices(1)) uf.unite(pos(e[0]), pos(e[1]));
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t i = 0; i < verts.size(); ++i) groups[uf.find(i)].push_back(verts[i]);
  std::vector<std::vector<Vertex>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  auto rank_in = [](const std::vector<Vertex>& vs, Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  const Vertex nb = static_cast<Vertex>(vb.size());
  std::vector<Simplex> cells;
  for (const auto& s : a.facets()) {
    for (const auto& t : b.facets()) {
      const std::size_t p = s.size() - 1, q = t.size() - 1;
      // Each staircase path from (0,0) to (p,q) is a choice of p right-steps
      // among p+q steps, encoded as a bitmask.
      for (std::size_t mask = 0; mask < (std::size_t{1} << (p + q)); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != p) continue;
        Simplex cell;
        std::size_t i = 0, j = 0;
        cell.push_back(rank_in(va, s[i]) * nb + rank_in(vb, t[j]));
        for (std::size_t step = 0; step < p + q; ++step) {
          if (mask & (std::size_t{1} << step)) ++i; else ++j;
          cell.push_back(rank_in(va, s[i]) * nb + rank_in(vb, t[j]));
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return SimplicialComplex::generated_by(std::move(cells));
}

Subdivision::Subdivision(const SimplicialComplex& original)
    : original_(original), ordered_(original.all_simplices()) {
  std::vector<Simplex> flags;
  // Maximal chains ending at a facet: remove one vertex at a time.
  std::function<void(const Simplex&, Simplex&)> descend = [&](const Simplex& s, Simplex& chain) {
    chain.push_back(static_cast<Vertex>(*original_.global_index(s)));
    if (s.size() == 1) {
      Simplex flag = chain;
      std::sort(flag.begin(), flag.end());
      flags.push_back(std::move(flag));
    } else {
      for (const auto& f : boundary_faces(s)) descend(f, chain);
    }
    chain.pop_back();
  };
  for (const auto& f : original_.facets()) {
    Simplex chain;
    descend(f, chain);
  }
  result_ = SimplicialComplex::generated_by(std::move(flags));
}

SimplicialComplex Subdivision::image_of(const SimplicialComplex& sub) const {
  return result_.full_subcomplex([&](Vertex v) { return sub.contains(simplex_of(v)); });
}

Vertex Subdivision::vertex_of(const Simplex& s) const {
  auto i = original_.global_index(s);
  if (!i) throw Error(ErrorCode::SimplexNotFound, format_simplex(s) + " is not in the complex");
  return static_cast<Vertex>(*i);
}

const Simplex& Subdivision::simplex_of(Vertex v) const { return ordered_.at(v); }

bool ChainComplexQ::is_valid() const {
  if (boundaries.size() != ranks.size()) return false;
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    const auto& d = boundaries[j];
    if (d.cols() != ranks[j]) return false;
    if (d.rows() != (j == 0 ? 0 : ranks[j - 1])) return false;
    if (j >= 2 && !(boundaries[j - 1] * d).is_zero()) return false;
  }
  return true;
}

ChainComplexQ chain_complex(const SimplicialComplex& c) {
  ChainComplexQ cc;
  for (int d = 0; d <= c.dim(); ++d) cc.ranks.push_back(c.count(d));
  for (int d = 0; d <= c.dim(); ++d) {
    if (d == 0) {
      cc.boundaries.emplace_back(0, cc.ranks[0]);
      continue;
    }
    SparseMatrixQ m(cc.ranks[d - 1], cc.ranks[d]);
    const auto& layer = c.simplices(d);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      SparseVectorQ col;
      auto faces = boundary_faces(layer[k]);
      for (std::size_t i = 0; i < faces.size(); ++i)
        col.emplace_back(*c.index_of(faces[i]), Rational(i % 2 == 0 ? 1 : -1));
      m.set_column(k, std::move(col));
    }
    cc.boundaries.push_back(std::move(m));
  }
  return cc;
}

std::vector<int> betti(const ChainComplexQ& cc) {
  const std::size_t n = cc.ranks.size();
  std::vector<std::size_t> r(n + 1, 0);
  for (std::size_t j = 1; j < n; ++j) r[j] = rank(cc.boundaries[j]);
  std::vector<int> out(n);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = static_cast<int>(cc.ranks[j] - r[j] - r[j + 1]);
  return out;
}

std::vector<int> betti(const SimplicialComplex& c) { return betti(chain_complex(c)); }

long long alternating_sum(std::span<const int> values) {
  long long s = 0;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * values[i];
  return s;
}

StratifiedComplex::StratifiedComplex(SimplicialComplex complex,
                                     std::vector<SimplicialComplex> levels)
    : complex_(std::move(complex)) {
  const int m = complex_.dim();
  if (static_cast<int>(levels.size()) > std::max(m, 0)) {
    for (std::size_t j = std::max(m, 0); j < levels.size(); ++j)
      if (!levels[j].is_subcomplex_of(complex_))
        throw Error(ErrorCode::NotASubcomplex, "level " + std::to_string(j) + " is not a subcomplex");
    levels.resize(std::max(m, 0));
  }
  while (m > 0 && static_cast<int>(levels.size()) < m)
    levels.push_back(levels.empty() ? SimplicialComplex{} : levels.back());
  levels_ = std::move(levels);
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (!levels_[j].is_subcomplex_of(complex_))
      throw Error(ErrorCode::NotASubcomplex, "level " + std::to_string(j) + " is not a subcomplex");
    if (j > 0 && !levels_[j - 1].is_subcomplex_of(levels_[j]))
      throw Error(ErrorCode::BadFiltration,
                  "level " + std::to_string(j - 1) + " is not contained in level " + std::to_string(j));
  }
  for (int j = static_cast<int>(levels_.size()) - 1; j >= 0; --j)
    for (Vertex v : levels_[j].vertices()) vertex_depth_[v] = j;
}

StratifiedComplex StratifiedComplex::unstratified(SimplicialComplex complex) {
  return StratifiedComplex(std::move(complex), {});
}

StratifiedComplex StratifiedComplex::from_descending(SimplicialComplex complex,
                                                     std::vector<SimplicialComplex> descending) {
  const int m = complex.dim();
  if (static_cast<int>(descending.size()) > std::max(m - 1, 0))
    throw Error(ErrorCode::BadFiltration,
                "filtration has " + std::to_string(descending.size()) + " levels for a " +
                    std::to_string(m) + "-dimensional complex");
  std::vector<SimplicialComplex> levels(std::max(m, 0));
  // descending[i] is X_{m-2-i}; anything below the list is empty.
  for (std::size_t i = 0; i < descending.size(); ++i) levels[m - 2 - i] = descending[i];
  if (m >= 2) levels[m - 1] = levels[m - 2];
  return StratifiedComplex(std::move(complex), std::move(levels));
}

const SimplicialComplex& StratifiedComplex::level(int j) const {
  if (j < 0) return empty_complex();
  if (j >= static_cast<int>(levels_.size())) return complex_;
  return levels_[j];
}

int StratifiedComplex::depth(Vertex v) const {
  auto it = vertex_depth_.find(v);
  return it == vertex_depth_.end() ? dim() : it->second;
}

int StratifiedComplex::depth(const Simplex& s) const {
  for (int j = 0; j < static_cast<int>(levels_.size()); ++j)
    if (levels_[j].contains(s)) return j;
  return dim();
}

std::vector<StratifiedComplex::Stratum> StratifiedComplex::strata() const {
  std::vector<Stratum> out;
  for (int j = 0; j <= dim(); ++j) {
    std::vector<Simplex> open;
    for (const auto& s : level(j).all_simplices())
      if (!level(j - 1).contains(s)) open.push_back(s);
    if (open.empty()) continue;
    std::unordered_map<Simplex, std::size_t, SimplexHash> pos;
    for (std::size_t i = 0; i < open.size(); ++i) pos.emplace(open[i], i);
    UnionFind uf(open.size());
    for (std::size_t i = 0; i < open.size(); ++i)
      for (const auto& f : boundary_faces(open[i])) {
        auto it = pos.find(f);
        if (it != pos.end()) uf.unite(i, it->second);
      }
    std::map<std::size_t, Stratum> groups;
    for (std::size_t i = 0; i < open.size(); ++i) {
      auto& st = groups[uf.find(i)];
      st.level = j;
      st.dim = std::max(st.dim, simplex_dim(open[i]));
      st.simplices.push_back(open[i]);
    }
    std::vector<Stratum> layer;
    for (auto& [root, st] : groups) layer.push_back(std::move(st));
    std::sort(layer.begin(), layer.end(),
              [](const Stratum& a, const Stratum& b) { return a.simplices.front() < b.simplices.front(); });
    for (auto& st : layer) out.push_back(std::move(st));
  }
  return out;
}

bool StratifiedComplex::levels_full() const {
  for (const auto& l : levels_)
    if (!l.is_full_in(complex_)) return false;
  return true;
}

void StratifiedComplex::require_full() const {
  for (std::size_t j = 0; j < levels_.size(); ++j)
    if (!levels_[j].is_full_in(complex_))
      throw Error(ErrorCode::NotFull, "filtration level " + std::to_string(j) +
                                          " is not a full subcomplex; run barycentric_subdivide "
                                          "(twice suffices)");
}

bool StratifiedComplex::is_pseudomanifold() const {
  const int m = dim();
  if (m < 0) return false;
  for (int j = 0; j < m; ++j)
    if (level(j).dim() > j) return false;
  if (m >= 2 && !(level(m - 1) == level(m - 2))) return false;
  for (const auto& f : complex_.facets())
    if (simplex_dim(f) != m || level(m - 2).contains(f)) return false;
  // Off X_{m-2} every codimension-1 simplex separates exactly two facets.
  if (m == 0) return true;
  std::vector<int> cofacets(complex_.count(m - 1), 0);
  for (const auto& f : complex_.simplices(m))
    for (const auto& g : boundary_faces(f)) ++cofacets[*complex_.index_of(g)];
  const auto& ridges = complex_.simplices(m - 1);
  for (std::size_t i = 0; i < ridges.size(); ++i)
    if (cofacets[i] != 2 && !level(m - 2).contains(ridges[i])) return false;
  return true;
}

void StratifiedComplex::require_pseudomanifold() const {
  if (!is_pseudomanifold())
    throw Error(ErrorCode::NotPseudomanifold,
                "need X_{m-1} = X_{m-2}, dim X_j <= j, every facet of dimension m and "
                "two facets on every codimension-1 simplex off X_{m-2}");
}

StratifiedComplex StratifiedComplex::restricted_to(const SimplicialComplex& sub) const {
  return restricted_to(sub, 0);
}

StratifiedComplex StratifiedComplex::restricted_to(const SimplicialComplex& sub, int shift) const {
  std::vector<SimplicialComplex> levels;
  for (int j = 0; j < sub.dim(); ++j) {
    const auto& l = level(j + shift);
    std::vector<Simplex> kept;
    for (const auto& s : sub.all_simplices())
      if (l.contains(s)) kept.push_back(s);
    levels.push_back(SimplicialComplex::generated_by(std::move(kept)));
  }
  return StratifiedComplex(sub, std::move(levels));
}

StratifiedComplex StratifiedComplex::subdivided() const { return barycentric_subdivide(*this); }

StratifiedComplex barycentric_subdivide(const StratifiedComplex& sc) {
  Subdivision sd(sc.complex());
  std::vector<SimplicialComplex> levels;
  for (int j = 0; j < sc.dim(); ++j) levels.push_back(sd.image_of(sc.level(j)));
  return StratifiedComplex(sd.result(), std::move(levels));
}

}  // namespace bcover
