#include "bcover/local_system.hpp"

#include <deque>
#include <set>

#include "bcover/error.hpp"

namespace bcover {

namespace {

bool is_permutation_matrix(const QMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    int ones = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 1) ++ones;
      else if (sgn(m(i, j)) != 0) return false;
    }
    if (ones != 1) return false;
  }
  return m.transposed() * m == QMatrix::identity(m.rows());
}

Permutation permutation_of(const QMatrix& m) {
  std::vector<int> image(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) == 1) image[j] = static_cast<int>(i);
  return Permutation(std::move(image));
}

}  // namespace

LocalSystemQ::LocalSystemQ(SimplicialComplex base, std::size_t rank,
                           std::unordered_map<Simplex, QMatrix, SimplexHash> forward)
    : base_(std::move(base)), rank_(rank), forward_(std::move(forward)) {
  for (const auto& e : base_.simplices(1)) {
    auto it = forward_.find(e);
    if (it == forward_.end())
      throw Error(ErrorCode::RankMismatch, "no transport given for edge " + format_simplex(e));
    if (it->second.rows() != rank_ || it->second.cols() != rank_)
      throw Error(ErrorCode::RankMismatch, "transport on " + format_simplex(e) + " is not " +
                                               std::to_string(rank_) + "x" + std::to_string(rank_));
    auto inv = it->second.inverse();
    if (!inv) throw Error(ErrorCode::NotInvertible, "transport on " + format_simplex(e) + " is singular");
    backward_.emplace(e, std::move(*inv));
  }
  for (auto it = forward_.begin(); it != forward_.end();) {
    if (!base_.contains(it->first)) it = forward_.erase(it);
    else ++it;
  }
  for (const auto& t : base_.simplices(2))
    if (!(transport(t[1], t[2]) * transport(t[0], t[1]) == transport(t[0], t[2])))
      throw Error(ErrorCode::NotFlat, "transports around " + format_simplex(t) + " do not compose");
}

LocalSystemQ LocalSystemQ::trivial(SimplicialComplex base, std::size_t rank) {
  std::unordered_map<Simplex, QMatrix, SimplexHash> forward;
  const auto id = QMatrix::identity(rank);
  for (const auto& e : base.simplices(1)) forward.emplace(e, id);
  return LocalSystemQ(std::move(base), rank, std::move(forward));
}

const QMatrix& LocalSystemQ::transport(Vertex a, Vertex b) const {
  if (a < b) {
    auto it = forward_.find({a, b});
    if (it != forward_.end()) return it->second;
  } else {
    auto it = backward_.find({b, a});
    if (it != backward_.end()) return it->second;
  }
  throw Error(ErrorCode::SimplexNotFound,
              "[" + std::to_string(a) + "," + std::to_string(b) + "] is not an edge of the base");
}

bool LocalSystemQ::is_flat() const {
  for (const auto& t : base_.simplices(2))
    if (!(transport(t[1], t[2]) * transport(t[0], t[1]) == transport(t[0], t[2]))) return false;
  return true;
}

LocalSystemQ from_representation(const RepresentationQ& rep) {
  const auto& p = rep.presentation;
  if (rep.matrices.size() != p.generators().size())
    throw Error(ErrorCode::RankMismatch,
                "expected " + std::to_string(p.generators().size()) + " generator matrices");
  std::vector<QMatrix> inverses;
  for (std::size_t i = 0; i < rep.matrices.size(); ++i) {
    const auto& m = rep.matrices[i];
    if (m.rows() != rep.rank || m.cols() != rep.rank)
      throw Error(ErrorCode::RankMismatch, "matrix for " + p.generator_name(i) + " has wrong shape");
    auto inv = m.inverse();
    if (!inv) throw Error(ErrorCode::NotInvertible, "matrix for " + p.generator_name(i) + " is singular");
    inverses.push_back(std::move(*inv));
  }
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    auto t = QMatrix::identity(rep.rank);
    for (const auto& l : p.relators()[r])
      t = (l.exponent > 0 ? rep.matrices[l.generator] : inverses[l.generator]) * t;
    if (!t.is_identity())
      throw Error(ErrorCode::RelatorViolatedMatrix,
                  "relator " + std::to_string(r) + " (triangle " + format_simplex(p.relator_triangles()[r]) + ")");
  }
  std::unordered_map<Simplex, QMatrix, SimplexHash> forward;
  const auto id = QMatrix::identity(rep.rank);
  for (const auto& e : p.complex().simplices(1)) {
    auto g = p.generator_index(e);
    forward.emplace(e, g ? rep.matrices[*g] : id);
  }
  return LocalSystemQ(p.complex(), rep.rank, std::move(forward));
}

QMatrix permutation_matrix(const Permutation& p) {
  QMatrix m(p.degree(), p.degree());
  for (int i = 0; i < p.degree(); ++i) m(p(i), i) = 1;
  return m;
}

LocalSystemQ pushforward_local_system(const EdgePathPresentation& p, const MonodromyRep& rep) {
  validate_monodromy(p, rep);
  RepresentationQ r{p, static_cast<std::size_t>(rep.degree), {}};
  for (const auto& g : rep.images) r.matrices.push_back(permutation_matrix(g));
  return from_representation(r);
}

QMatrix kernel_transport(const Permutation& p) {
  // f_i = e_i - e_{d-1} maps to f_{p(i)} - f_{p(d-1)}, with f_{d-1} = 0.
  const int d = p.degree();
  QMatrix m(d > 0 ? d - 1 : 0, d > 0 ? d - 1 : 0);
  for (int i = 0; i + 1 < d; ++i) {
    if (p(i) != d - 1) m(p(i), i) += 1;
    if (p(d - 1) != d - 1) m(p(d - 1), i) -= 1;
  }
  return m;
}

TraceSplit trace_split(const LocalSystemQ& p) {
  const std::size_t d = p.rank();
  std::unordered_map<Simplex, QMatrix, SimplexHash> kernel;
  for (const auto& e : p.base().simplices(1)) {
    const auto& t = p.transport(e[0], e[1]);
    if (!is_permutation_matrix(t))
      throw Error(ErrorCode::NotPermutationSystem, "transport on " + format_simplex(e) + " is not a permutation");
    kernel.emplace(e, kernel_transport(permutation_of(t)));
  }
  TraceSplit split;
  split.constant = LocalSystemQ::trivial(p.base(), 1);
  split.kernel = LocalSystemQ(p.base(), d == 0 ? 0 : d - 1, std::move(kernel));
  split.unit = QMatrix(d, 1);
  split.trace = QMatrix(1, d);
  split.constant_projection = QMatrix(1, d);
  split.kernel_inclusion = QMatrix(d, d == 0 ? 0 : d - 1);
  split.kernel_projection = QMatrix(d == 0 ? 0 : d - 1, d);
  for (std::size_t i = 0; i < d; ++i) {
    split.unit(i, 0) = 1;
    split.trace(0, i) = 1;
    split.constant_projection(0, i) = Rational(1, static_cast<unsigned long>(d));
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    split.kernel_inclusion(i, i) = 1;
    split.kernel_inclusion(d - 1, i) = -1;
    for (std::size_t j = 0; j < d; ++j)
      split.kernel_projection(i, j) = Rational(i == j ? 1 : 0) - Rational(1, static_cast<unsigned long>(d));
  }
  return split;
}

GlobalSections global_sections(const LocalSystemQ& l) {
  const auto& c = l.base();
  const std::size_t r = l.rank();
  GlobalSections out;
  const auto comps = components(c);
  std::size_t offset = 0;
  std::vector<std::vector<std::vector<Rational>>> per_component;
  for (const auto& comp : comps) {
    const Vertex root = comp.front();
    std::unordered_map<Vertex, QMatrix> from_root{{root, QMatrix::identity(r)}};
    std::set<Simplex> tree;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : c.neighbors(u)) {
        if (from_root.count(w)) continue;
        from_root.emplace(w, l.transport(u, w) * from_root.at(u));
        tree.insert({std::min(u, w), std::max(u, w)});
        queue.push_back(w);
      }
    }
    // A vector at the root extends to a flat section iff every loop fixes it.
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : c.simplices(1)) {
      if (tree.count(e) || !from_root.count(e[0])) continue;
      auto loop = from_root.at(e[1]).inverse().value() * l.transport(e[0], e[1]) * from_root.at(e[0]);
      if (loop.is_identity()) continue;
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rational> row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = loop(i, j) - Rational(i == j ? 1 : 0);
        rows.push_back(std::move(row));
      }
    }
    std::vector<std::vector<Rational>> fixed;
    if (rows.empty()) {
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rational> v(r);
        v[i] = 1;
        fixed.push_back(std::move(v));
      }
    } else {
      fixed = QMatrix::from_rows(rows).kernel();
    }
    per_component.push_back(std::move(fixed));
    offset += r;
  }
  for (std::size_t k = 0; k < per_component.size(); ++k)
    for (const auto& v : per_component[k]) {
      std::vector<Rational> full(offset);
      std::copy(v.begin(), v.end(), full.begin() + k * r);
      out.basis.push_back(std::move(full));
    }
  out.dimension = out.basis.size();
  return out;
}

ChainComplexQ twisted_chain_complex(const SimplicialComplex& c, const LocalSystemQ& l) {
  if (!c.is_subcomplex_of(l.base()))
    throw Error(ErrorCode::NotASubcomplex, "local system is not defined on the whole complex");
  const std::size_t r = l.rank();
  ChainComplexQ cc;
  for (int d = 0; d <= c.dim(); ++d) cc.ranks.push_back(c.count(d) * r);
  for (int d = 0; d <= c.dim(); ++d) {
    if (d == 0) {
      cc.boundaries.emplace_back(0, cc.ranks[0]);
      continue;
    }
    SparseMatrixQ m(cc.ranks[d - 1], cc.ranks[d]);
    const auto& layer = c.simplices(d);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const auto& s = layer[k];
      const auto faces = boundary_faces(s);
      // Only face 0 changes the anchor, from s[0] to s[1].
      const QMatrix& t = l.transport(s[0], s[1]);
      std::vector<std::size_t> face_index;
      for (const auto& f : faces) face_index.push_back(*c.index_of(f));
      for (std::size_t e = 0; e < r; ++e) {
        SparseVectorQ col;
        for (std::size_t i = 0; i < r; ++i)
          if (sgn(t(i, e)) != 0) col.emplace_back(face_index[0] * r + i, t(i, e));
        for (std::size_t f = 1; f < faces.size(); ++f)
          col.emplace_back(face_index[f] * r + e, Rational(f % 2 == 0 ? 1 : -1));
        m.set_column(k * r + e, std::move(col));
      }
    }
    cc.boundaries.push_back(std::move(m));
  }
  return cc;
}

std::vector<int> twisted_betti(const SimplicialComplex& c, const LocalSystemQ& l) {
  return betti(twisted_chain_complex(c, l));
}

LocalSystemQ restrict(const LocalSystemQ& l, const SimplicialComplex& sub) {
  if (!sub.is_subcomplex_of(l.base()))
    throw Error(ErrorCode::NotASubcomplex, "restriction target is not a subcomplex of the base");
  std::unordered_map<Simplex, QMatrix, SimplexHash> forward;
  for (const auto& e : sub.simplices(1)) forward.emplace(e, l.transport(e[0], e[1]));
  return LocalSystemQ(sub, l.rank(), std::move(forward));
}

}  // namespace bcover
