#include "bcover/covering.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "bcover/error.hpp"

namespace bcover {

namespace {

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

std::size_t position(const std::vector<Vertex>& sorted, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

// Components of the preimage of a connected subcomplex of the complement,
// labelled by the least sheet they meet over the least vertex.
class SheetComponents {
 public:
  SheetComponents(const SimplicialComplex& piece, const BranchedCoverSpec& spec)
      : vertices_(piece.vertices()), degree_(spec.degree()) {
    UnionFind uf(vertices_.size() * degree_);
    for (const auto& e : piece.simplices(1)) {
      const auto t = edge_transport(spec.presentation, spec.monodromy, e[0], e[1]);
      for (int s = 0; s < degree_; ++s) uf.unite(key(e[0], s), key(e[1], t(s)));
    }
    std::vector<int> root_label(vertices_.size() * degree_, -1);
    labels_.assign(vertices_.size() * degree_, -1);
    count_ = 0;
    // Ranks are assigned in order of the sheets over the least vertex; on a
    // connected piece every component meets that fiber.
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      auto r = uf.find(k);
      if (root_label[r] < 0) root_label[r] = count_++;
      labels_[k] = root_label[r];
    }
  }

  int count() const { return count_; }
  int label(Vertex u, int sheet) const { return labels_.at(key(u, sheet)); }

 private:
  std::size_t key(Vertex u, int s) const { return position(vertices_, u) * degree_ + s; }

  std::vector<Vertex> vertices_;
  int degree_;
  std::vector<int> labels_;
  int count_ = 0;
};

void require_connected_piece(const SimplicialComplex& piece, const Simplex& tau) {
  if (piece.empty())
    throw Error(ErrorCode::DisconnectedPuncturedStar,
                "punctured star of " + format_simplex(tau) + " is empty; subdivide the base");
  const auto comps = components(piece);
  if (comps.size() != 1)
    throw Error(ErrorCode::DisconnectedPuncturedStar,
                "punctured star of " + format_simplex(tau) + " has " + std::to_string(comps.size()) +
                    " components");
}

}  // namespace

std::optional<Vertex> EdgePathPresentation::parent(Vertex v) const {
  auto it = parent_.find(v);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::optional<Letter> EdgePathPresentation::letter(Vertex a, Vertex b) const {
  Simplex e{std::min(a, b), std::max(a, b)};
  if (!complex_.contains(e)) throw Error(ErrorCode::SimplexNotFound, format_simplex(e) + " is not an edge");
  auto it = generator_index_.find(e);
  if (it == generator_index_.end()) return std::nullopt;
  return Letter{it->second, a < b ? 1 : -1};
}

std::optional<std::size_t> EdgePathPresentation::generator_index(const Simplex& edge) const {
  auto it = generator_index_.find(edge);
  if (it == generator_index_.end()) return std::nullopt;
  return it->second;
}

std::string EdgePathPresentation::generator_name(std::size_t i) const {
  const auto& g = generators_.at(i);
  return std::to_string(g[0]) + "->" + std::to_string(g[1]);
}

EdgePathPresentation edge_path_presentation(const SimplicialComplex& c, Vertex basepoint) {
  if (!c.has_vertex(basepoint))
    throw Error(ErrorCode::BadBasepoint,
                "basepoint " + std::to_string(basepoint) + " is not a vertex of the complex");
  EdgePathPresentation p;
  p.complex_ = c;
  p.basepoint_ = basepoint;
  std::unordered_set<Vertex> seen{basepoint};
  std::deque<Vertex> queue{basepoint};
  std::set<Simplex> tree;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : c.neighbors(u)) {
      if (!seen.insert(w).second) continue;
      p.parent_[w] = u;
      tree.insert({std::min(u, w), std::max(u, w)});
      queue.push_back(w);
    }
  }
  if (seen.size() != c.vertices().size())
    throw Error(ErrorCode::Disconnected, "complex has " + std::to_string(components(c).size()) +
                                             " components");
  p.tree_.assign(tree.begin(), tree.end());
  for (const auto& e : c.simplices(1)) {
    if (tree.count(e)) continue;
    p.generator_index_.emplace(e, p.generators_.size());
    p.generators_.push_back(e);
  }
  for (const auto& t : c.simplices(2)) {
    Word w;
    const std::pair<Vertex, Vertex> path[3] = {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}};
    for (auto [a, b] : path)
      if (auto l = p.letter(a, b)) w.push_back(*l);
    p.relators_.push_back(std::move(w));
  }
  return p;
}

MonodromyRep MonodromyRep::trivial(const EdgePathPresentation& p, int degree) {
  return MonodromyRep{degree,
                      std::vector<Permutation>(p.generators().size(), Permutation::identity(degree))};
}

Permutation evaluate(const Word& w, const MonodromyRep& rep) {
  auto t = Permutation::identity(rep.degree);
  for (const auto& l : w) {
    const auto& g = rep.images.at(l.generator);
    t = (l.exponent > 0 ? g : g.inverse()) * t;
  }
  return t;
}

void validate_monodromy(const EdgePathPresentation& p, const MonodromyRep& rep) {
  if (rep.degree < 1) throw Error(ErrorCode::BadParams, "degree must be at least 1");
  if (rep.images.size() != p.generators().size())
    throw Error(ErrorCode::MissingGenerator,
                "expected " + std::to_string(p.generators().size()) + " generator images, got " +
                    std::to_string(rep.images.size()));
  for (std::size_t i = 0; i < rep.images.size(); ++i)
    if (rep.images[i].degree() != rep.degree)
      throw Error(ErrorCode::DegreeMismatch, "generator " + p.generator_name(i) + " has degree " +
                                                 std::to_string(rep.images[i].degree()));
  const auto& tris = p.relator_triangles();
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    if (!evaluate(p.relators()[i], rep).is_identity())
      throw Error(ErrorCode::RelatorViolated,
                  "relator " + std::to_string(i) + " (triangle " + format_simplex(tris[i]) + ")");
}

Permutation edge_transport(const EdgePathPresentation& p, const MonodromyRep& rep, Vertex a,
                           Vertex b) {
  auto l = p.letter(a, b);
  if (!l) return Permutation::identity(rep.degree);
  const auto& g = rep.images.at(l->generator);
  return l->exponent > 0 ? g : g.inverse();
}

EdgePathPresentation BranchedCoverSpec::complement_presentation(const StratifiedComplex& base,
                                                                const SimplicialComplex& branch,
                                                                Vertex basepoint) {
  if (branch.has_vertex(basepoint))
    throw Error(ErrorCode::BadBasepoint,
                "basepoint " + std::to_string(basepoint) + " lies on the branch locus");
  auto complement = base.complex().full_subcomplex([&](Vertex v) { return !branch.has_vertex(v); });
  return edge_path_presentation(complement, basepoint);
}

void BranchedCoverSpec::validate_space(const StratifiedComplex& base,
                                       const StratifiedComplex& branch) {
  base.require_full();
  base.require_pseudomanifold();
  const auto& r = branch.complex();
  if (!r.is_subcomplex_of(base.complex()))
    throw Error(ErrorCode::NotASubcomplex, "branch locus is not a subcomplex of the base");
  if (!r.empty() && r.dim() > base.dim() - 2)
    throw Error(ErrorCode::BranchNotInCodim2Level,
                "branch locus has a " + std::to_string(r.dim()) + "-simplex in a " +
                    std::to_string(base.dim()) + "-dimensional base");
  if (!r.is_full_in(base.complex()))
    throw Error(ErrorCode::NotFull,
                "branch locus is not a full subcomplex; run barycentric_subdivide (twice suffices)");
}

BranchedCoverSpec BranchedCoverSpec::make(StratifiedComplex base, StratifiedComplex branch,
                                          Vertex basepoint, MonodromyRep rep) {
  validate_space(base, branch);
  const auto& r = branch.complex();
  BranchedCoverSpec spec;
  spec.presentation = complement_presentation(base, r, basepoint);
  spec.complement = spec.presentation.complex();
  spec.base = std::move(base);
  spec.branch = std::move(branch);
  validate_monodromy(spec.presentation, rep);
  spec.monodromy = std::move(rep);
  return spec;
}

Simplex CoverComplex::project(const Simplex& s) const {
  Simplex out;
  out.reserve(s.size());
  for (Vertex x : s) out.push_back(over.at(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t CoverComplex::fiber_size(const Simplex& base_simplex) const {
  std::size_t n = 0;
  for (const auto& s : total.simplices(simplex_dim(base_simplex)))
    if (project(s) == base_simplex) ++n;
  return n;
}

CoverComplex build_cover(const EdgePathPresentation& p, const MonodromyRep& rep) {
  validate_monodromy(p, rep);
  const auto& c = p.complex();
  const auto& verts = c.vertices();
  const int d = rep.degree;
  auto id = [&](Vertex v, int s) { return static_cast<Vertex>(position(verts, v) * d + s); };

  std::vector<Simplex> lifts;
  for (const auto& f : c.facets()) {
    std::vector<Permutation> from_first{Permutation::identity(d)};
    for (std::size_t i = 1; i < f.size(); ++i) from_first.push_back(edge_transport(p, rep, f[0], f[i]));
    for (int s = 0; s < d; ++s) {
      Simplex lift;
      for (std::size_t i = 0; i < f.size(); ++i) lift.push_back(id(f[i], from_first[i](s)));
      std::sort(lift.begin(), lift.end());
      lifts.push_back(std::move(lift));
    }
  }
  CoverComplex cover;
  cover.degree = d;
  cover.base = c;
  cover.total = SimplicialComplex::generated_by(std::move(lifts));
  for (Vertex v : verts)
    for (int s = 0; s < d; ++s) {
      cover.over.push_back(v);
      cover.label.push_back(s);
    }
  return cover;
}

CoverComplex build_complement_cover(const BranchedCoverSpec& spec) {
  return build_cover(spec.presentation, spec.monodromy);
}

SimplicialComplex punctured_star(const SimplicialComplex& c, const SimplicialComplex& branch,
                                 const Simplex& s) {
  return star(c, s).full_subcomplex([&](Vertex v) { return !branch.has_vertex(v); });
}

std::vector<Permutation> local_monodromy_group(const BranchedCoverSpec& spec, const Simplex& tau) {
  if (!spec.is_branch_simplex(tau))
    throw Error(ErrorCode::SimplexNotInBranchLocus, format_simplex(tau) + " is not a simplex of R");
  const auto piece = punctured_star(spec.base.complex(), spec.branch.complex(), tau);
  require_connected_piece(piece, tau);
  const int d = spec.degree();
  const Vertex root = piece.vertices().front();

  // Transport from the root fiber along the BFS tree of the punctured star.
  std::unordered_map<Vertex, Permutation> from_root{{root, Permutation::identity(d)}};
  std::set<Simplex> tree;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : piece.neighbors(u)) {
      if (from_root.count(w)) continue;
      from_root.emplace(w, edge_transport(spec.presentation, spec.monodromy, u, w) * from_root.at(u));
      tree.insert({std::min(u, w), std::max(u, w)});
      queue.push_back(w);
    }
  }
  std::set<Permutation> loops;
  for (const auto& e : piece.simplices(1)) {
    if (tree.count(e)) continue;
    auto g = from_root.at(e[1]).inverse() *
             edge_transport(spec.presentation, spec.monodromy, e[0], e[1]) * from_root.at(e[0]);
    if (!g.is_identity()) loops.insert(std::move(g));
  }
  if (loops.empty()) return {Permutation::identity(d)};
  return {loops.begin(), loops.end()};
}

int fiber_cardinality(const BranchedCoverSpec& spec, const Simplex& tau) {
  return static_cast<int>(orbits(spec.degree(), local_monodromy_group(spec, tau)).size());
}

CoverComplex fox_complete(const BranchedCoverSpec& spec) {
  const auto& r = spec.branch.complex();
  if (r.empty()) return build_complement_cover(spec);
  const auto& y = spec.base.complex();
  const int d = spec.degree();

  std::map<Vertex, SheetComponents> vertex_lifts;
  for (Vertex v : r.vertices()) {
    const auto piece = punctured_star(y, r, {v});
    require_connected_piece(piece, {v});
    vertex_lifts.emplace(v, SheetComponents(piece, spec));
  }

  // Vertex ids ordered by (base vertex, label).
  std::map<std::pair<Vertex, int>, Vertex> ids;
  for (Vertex v : y.vertices()) {
    const int labels = r.has_vertex(v) ? vertex_lifts.at(v).count() : d;
    for (int k = 0; k < labels; ++k) ids.emplace(std::make_pair(v, k), 0);
  }
  CoverComplex cover;
  cover.degree = d;
  cover.base = y;
  cover.branch = r;
  for (auto& [key, id] : ids) {
    id = static_cast<Vertex>(cover.over.size());
    cover.over.push_back(key.first);
    cover.label.push_back(key.second);
  }

  std::set<Simplex> lifts;
  std::size_t expected = 0;
  for (const auto& sigma : y.all_simplices()) {
    Simplex regular, singular;
    for (Vertex v : sigma) (r.has_vertex(v) ? singular : regular).push_back(v);
    if (!regular.empty()) {
      const Vertex a = regular.front();
      for (int s = 0; s < d; ++s) {
        Simplex lift;
        for (Vertex w : regular) {
          const int sheet = w == a ? s : edge_transport(spec.presentation, spec.monodromy, a, w)(s);
          lift.push_back(ids.at({w, sheet}));
        }
        for (Vertex v : singular) lift.push_back(ids.at({v, vertex_lifts.at(v).label(a, s)}));
        std::sort(lift.begin(), lift.end());
        lifts.insert(std::move(lift));
      }
      expected += d;
      continue;
    }
    // sigma lies in R: one lift per component of the punctured-star preimage.
    const auto piece = punctured_star(y, r, sigma);
    require_connected_piece(piece, sigma);
    SheetComponents comps(piece, spec);
    const Vertex p = piece.vertices().front();
    std::set<Simplex> distinct;
    for (int s = 0; s < d; ++s) {
      Simplex lift;
      for (Vertex v : sigma) lift.push_back(ids.at({v, vertex_lifts.at(v).label(p, s)}));
      std::sort(lift.begin(), lift.end());
      distinct.insert(std::move(lift));
    }
    if (static_cast<int>(distinct.size()) != comps.count())
      throw Error(ErrorCode::InsufficientSubdivision,
                  format_simplex(sigma) + " has " + std::to_string(comps.count()) +
                      " local sheets but its vertex lifts span " + std::to_string(distinct.size()) +
                      " simplices; subdivide the base");
    const int orbit_count = fiber_cardinality(spec, sigma);
    if (orbit_count != comps.count())
      throw Error(ErrorCode::InsufficientSubdivision,
                  format_simplex(sigma) + ": local monodromy has " + std::to_string(orbit_count) +
                      " orbits but the punctured star lifts to " + std::to_string(comps.count()) +
                      " components");
    cover.branch_orbits.emplace(sigma, orbit_count);
    expected += distinct.size();
    lifts.insert(distinct.begin(), distinct.end());
  }
  if (lifts.size() != expected)
    throw Error(ErrorCode::InsufficientSubdivision, "lifted simplices collide; subdivide the base");
  cover.total = SimplicialComplex::generated_by({lifts.begin(), lifts.end()});
  if (cover.total.size() != expected)
    throw Error(ErrorCode::InsufficientSubdivision,
                "lifted simplices are not closed under faces; subdivide the base");
  return cover;
}

StratifiedComplex refine_stratification(const StratifiedComplex& base,
                                        const StratifiedComplex& branch) {
  const auto& y = base.complex();
  const auto& r = branch.complex();
  const int m = base.dim();
  if (!r.empty() && r.dim() > m - 2)
    throw Error(ErrorCode::BranchNotInCodim2Level,
                "branch locus has dimension " + std::to_string(r.dim()) + " in a " +
                    std::to_string(m) + "-dimensional base");
  const auto all = y.all_simplices();
  constexpr int kOffBranch = std::numeric_limits<int>::max();
  std::vector<std::pair<int, int>> key(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    key[i] = {base.depth(all[i]), r.contains(all[i]) ? branch.depth(all[i]) : kOffBranch};

  // Pieces: components of simplices sharing a key, joined through faces.
  UnionFind uf(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& f : boundary_faces(all[i])) {
      const auto j = *y.global_index(f);
      if (key[j] == key[i]) uf.unite(i, j);
    }
  std::vector<int> piece_dim(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i)
    piece_dim[uf.find(i)] = std::max(piece_dim[uf.find(i)], simplex_dim(all[i]));

  std::vector<SimplicialComplex> levels;
  for (int j = 0; j < m; ++j) {
    std::vector<Simplex> members;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (piece_dim[uf.find(i)] <= j) members.push_back(all[i]);
    for (const auto& s : members)
      for (const auto& f : boundary_faces(s))
        if (piece_dim[uf.find(*y.global_index(f))] > j)
          throw Error(ErrorCode::BadFiltration,
                      "refined level " + std::to_string(j) + " is not closed at " + format_simplex(s) +
                          "; subdivide the base");
    levels.push_back(SimplicialComplex::generated_by(std::move(members)));
  }
  StratifiedComplex refined(y, std::move(levels));
  refined.require_full();
  return refined;
}

StratifiedComplex pullback_stratification(const CoverComplex& cover,
                                          const StratifiedComplex& refined) {
  std::vector<SimplicialComplex> levels;
  for (int j = 0; j < refined.dim(); ++j) {
    std::vector<Simplex> members;
    for (const auto& s : cover.total.all_simplices())
      if (refined.level(j).contains(cover.project(s))) members.push_back(s);
    levels.push_back(SimplicialComplex::generated_by(std::move(members)));
  }
  return StratifiedComplex(cover.total, std::move(levels));
}

bool ConnectivityReport::passed() const { return failing().empty(); }

std::vector<Simplex> ConnectivityReport::failing() const {
  std::vector<Simplex> out;
  for (const auto* part : {&downstairs, &upstairs})
    for (const auto& r : *part)
      if (r.components != 1) out.push_back(r.simplex);
  return out;
}

ConnectivityReport punctured_star_connectivity(const SimplicialComplex& base,
                                               const SimplicialComplex& branch) {
  ConnectivityReport report;
  for (const auto& tau : branch.all_simplices()) {
    const auto piece = punctured_star(base, branch, tau);
    report.downstairs.push_back({tau, static_cast<int>(components(piece).size())});
  }
  return report;
}

ConnectivityReport complement_connectivity_check(const BranchedCoverSpec& spec) {
  auto report = punctured_star_connectivity(spec.base.complex(), spec.branch.complex());
  if (!report.passed() || spec.branch.complex().empty()) return report;
  const auto cover = fox_complete(spec);
  const auto upstairs_branch =
      cover.total.full_subcomplex([&](Vertex x) { return cover.lies_over_branch(x); });
  for (const auto& tau : upstairs_branch.all_simplices()) {
    const auto piece = punctured_star(cover.total, upstairs_branch, tau);
    report.upstairs.push_back({tau, static_cast<int>(components(piece).size())});
  }
  return report;
}

RiemannHurwitzResult riemann_hurwitz_check(const CoverComplex& cover) {
  RiemannHurwitzResult result;
  result.betti = betti(cover.total);
  result.chi_homology = alternating_sum(result.betti);
  for (const auto& s : cover.base.all_simplices()) {
    const long long sign = simplex_dim(s) % 2 == 0 ? 1 : -1;
    auto it = cover.branch_orbits.find(s);
    const long long fiber = it != cover.branch_orbits.end() ? it->second : cover.degree;
    result.chi_combinatorial += sign * fiber;
  }
  if (result.chi_homology != result.chi_combinatorial)
    throw Error(ErrorCode::ChiMismatch, "homological Euler characteristic " +
                                            std::to_string(result.chi_homology) +
                                            " differs from the fiber count " +
                                            std::to_string(result.chi_combinatorial));
  return result;
}

}  // namespace bcover
