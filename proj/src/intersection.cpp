#include "bcover/intersection.hpp"

#include <algorithm>

#include "bcover/error.hpp"

namespace bcover {

Perversity::Perversity(int dim, std::vector<int> values) : dim_(dim), values_(std::move(values)) {
  if (dim < 0) throw Error(ErrorCode::BadDimension, "negative dimension");
  if (static_cast<int>(values_.size()) != std::max(dim - 1, 0))
    throw Error(ErrorCode::BadPerversity, "need values p(2)..p(" + std::to_string(dim) + ")");
  if (!values_.empty() && values_[0] != 0) throw Error(ErrorCode::BadPerversity, "p(2) must be 0");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const int step = values_[i] - values_[i - 1];
    if (step != 0 && step != 1)
      throw Error(ErrorCode::BadPerversity,
                  "p(" + std::to_string(i + 2) + ") - p(" + std::to_string(i + 1) + ") is not 0 or 1");
  }
}

namespace {

Perversity from_formula(int m, int (*f)(int)) {
  if (m < 2) throw Error(ErrorCode::BadDimension, "perversities need dimension at least 2");
  std::vector<int> v;
  for (int k = 2; k <= m; ++k) v.push_back(f(k));
  return Perversity(m, std::move(v));
}

}  // namespace

Perversity Perversity::lower_middle(int m) {
  return from_formula(m, [](int k) { return (k - 2) / 2; });
}

Perversity Perversity::upper_middle(int m) {
  return from_formula(m, [](int k) { return (k - 1) / 2; });
}

Perversity Perversity::zero(int m) {
  return Perversity(m, std::vector<int>(std::max(m - 1, 0), 0));
}

Perversity Perversity::top(int m) {
  std::vector<int> v;
  for (int k = 2; k <= m; ++k) v.push_back(k - 2);
  return Perversity(m, std::move(v));
}

Perversity Perversity::named(const std::string& name, int m) {
  if (name != "lower" && name != "upper")
    throw Error(ErrorCode::BadParams, "perversity must be \"lower\" or \"upper\", got \"" + name + "\"");
  if (m < 2) return zero(std::max(m, 0));
  return name == "lower" ? lower_middle(m) : upper_middle(m);
}

int Perversity::at(int k) const {
  if (k < 2) return 0;
  if (k > dim_)
    throw Error(ErrorCode::BadDimension,
                "p(" + std::to_string(k) + ") undefined in dimension " + std::to_string(dim_));
  return values_[k - 2];
}

Perversity Perversity::truncated(int m) const {
  if (m > dim_) throw Error(ErrorCode::BadDimension, "cannot extend a perversity");
  const int keep = std::max(m - 1, 0);
  return Perversity(std::max(m, 0), std::vector<int>(values_.begin(), values_.begin() + keep));
}

bool Perversity::operator<=(const Perversity& other) const {
  if (dim_ != other.dim_) return false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > other.values_[i]) return false;
  return true;
}

Perversity complementary(const Perversity& p) {
  std::vector<int> v;
  for (int k = 2; k <= p.dim(); ++k) v.push_back(k - 2 - p.at(k));
  return Perversity(p.dim(), std::move(v));
}

bool is_allowable(const Simplex& sigma, const StratifiedComplex& sc, const Perversity& p) {
  const int m = sc.dim();
  const int d = simplex_dim(sigma);
  std::vector<int> depths;
  depths.reserve(sigma.size());
  for (Vertex v : sigma) depths.push_back(sc.depth(v));
  for (int k = 1; k <= m; ++k) {
    const int level = m - k;
    const int meeting =
        static_cast<int>(std::count_if(depths.begin(), depths.end(), [&](int x) { return x <= level; }));
    if (meeting == 0) continue;
    if (meeting - 1 > d - k + p.at(k)) return false;
  }
  return true;
}

namespace {

void check_inputs(const StratifiedComplex& sc, const Perversity& p) {
  if (p.dim() != sc.dim())
    throw Error(ErrorCode::BadDimension, "perversity is for dimension " + std::to_string(p.dim()) +
                                             ", space has dimension " + std::to_string(sc.dim()));
  sc.require_full();
}

// Allowable simplices and boundary matrices of the allowable chains.
class AllowableChains {
 public:
  AllowableChains(const StratifiedComplex& sc, const Perversity& p, const Coefficients& coeff)
      : sc_(sc), coeff_(coeff), r_(coeff.rank()) {
    const auto& c = sc.complex();
    allowed_.resize(c.dim() + 1);
    for (int j = 0; j <= c.dim(); ++j) {
      const auto& layer = c.simplices(j);
      allowed_[j].assign(layer.size(), 0);
      for (std::size_t i = 0; i < layer.size(); ++i)
        if (is_allowable(layer[i], sc, p)) {
          allowed_[j][i] = 1;
          allowable_.resize(c.dim() + 1);
          allowable_[j].push_back(i);
        }
    }
    allowable_.resize(c.dim() + 1);
  }

  int top() const { return sc_.dim(); }
  std::size_t rank() const { return r_; }
  const std::vector<std::size_t>& allowable(int j) const { return allowable_[j]; }

  /// Boundary of the allowable j-chains into all (j-1)-chains.
  SparseMatrixQ boundary(int j) const {
    const auto& c = sc_.complex();
    const auto& cols = allowable_[j];
    SparseMatrixQ m(j == 0 ? 0 : c.count(j - 1) * r_, cols.size() * r_);
    if (j == 0) return m;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& s = c.simplices(j)[cols[k]];
      const auto faces = boundary_faces(s);
      const auto a = anchor(s);
      std::vector<SparseVectorQ> columns(r_);
      for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::size_t row = *c.index_of(faces[i]) * r_;
        const Rational sign(i % 2 == 0 ? 1 : -1);
        if (coeff_.is_constant()) {
          columns[0].emplace_back(row, sign);
          continue;
        }
        const auto b = anchor(faces[i]);
        if (!b)
          throw Error(ErrorCode::AnchorUnavailable,
                      "a face of an allowable simplex lies in the singular set; subdivide the base");
        if (*b == *a) {
          for (std::size_t e = 0; e < r_; ++e) columns[e].emplace_back(row + e, sign);
        } else {
          const QMatrix& t = coeff_.system()->transport(*a, *b);
          for (std::size_t e = 0; e < r_; ++e)
            for (std::size_t f = 0; f < r_; ++f)
              if (sgn(t(f, e)) != 0) columns[e].emplace_back(row + f, sign * t(f, e));
        }
      }
      for (std::size_t e = 0; e < r_; ++e) m.set_column(k * r_ + e, std::move(columns[e]));
    }
    return m;
  }

  /// Rows of (j-1)-chains on non-allowable simplices.
  std::vector<std::size_t> forbidden_rows(int j) const {
    std::vector<std::size_t> rows;
    if (j == 0) return rows;
    for (std::size_t i = 0; i < allowed_[j - 1].size(); ++i)
      if (!allowed_[j - 1][i])
        for (std::size_t e = 0; e < r_; ++e) rows.push_back(i * r_ + e);
    return rows;
  }

  std::vector<std::size_t> allowed_rows(int j) const {
    std::vector<std::size_t> rows;
    for (std::size_t i : allowable_[j])
      for (std::size_t e = 0; e < r_; ++e) rows.push_back(i * r_ + e);
    return rows;
  }

 private:
  std::optional<Vertex> anchor(const Simplex& s) const {
    if (coeff_.is_constant()) return s.front();
    for (Vertex v : s)
      if (sc_.is_regular(v)) return v;
    return std::nullopt;
  }

  const StratifiedComplex& sc_;
  Coefficients coeff_;
  std::size_t r_;
  std::vector<std::vector<char>> allowed_;
  std::vector<std::vector<std::size_t>> allowable_;
};

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::vector<int> ih_betti(const StratifiedComplex& sc, const Perversity& p, const Coefficients& coeff) {
  check_inputs(sc, p);
  const int m = sc.dim();
  if (m < 0) return {};
  AllowableChains chains(sc, p, coeff);
  std::vector<std::size_t> rank_d(m + 2, 0), rank_n(m + 2, 0);
  for (int j = 1; j <= m; ++j) {
    const auto d = chains.boundary(j);
    rank_d[j] = rank(d);
    const auto rows = chains.forbidden_rows(j);
    rank_n[j] = rows.empty() ? 0 : rank(d.select(rows, all_indices(d.cols())));
  }
  std::vector<int> out(m + 1);
  for (int j = 0; j <= m; ++j) {
    const long long a = static_cast<long long>(chains.allowable(j).size() * chains.rank());
    out[j] = static_cast<int>(a - static_cast<long long>(rank_d[j]) -
                              static_cast<long long>(rank_d[j + 1]) +
                              static_cast<long long>(rank_n[j + 1]));
  }
  return out;
}

ICComplexQ intersection_chain_complex(const StratifiedComplex& sc, const Perversity& p,
                                      const Coefficients& coeff) {
  check_inputs(sc, p);
  const int m = sc.dim();
  ICComplexQ ic;
  if (m < 0) return ic;
  AllowableChains chains(sc, p, coeff);
  // Bases in allowable coordinates first, then translated to chain coordinates.
  std::vector<std::vector<SparseVectorQ>> local(m + 1);
  std::vector<SparseMatrixQ> d(m + 1);
  for (int j = 0; j <= m; ++j) {
    d[j] = chains.boundary(j);
    const auto rows = chains.forbidden_rows(j);
    if (rows.empty()) {
      for (std::size_t i = 0; i < d[j].cols(); ++i) local[j].push_back({{i, Rational(1)}});
    } else {
      local[j] = kernel_basis(d[j].select(rows, all_indices(d[j].cols())));
    }
  }
  for (int j = 0; j <= m; ++j) {
    const auto rows = chains.allowed_rows(j);
    std::vector<SparseVectorQ> basis;
    for (const auto& v : local[j]) {
      SparseVectorQ w;
      for (const auto& [i, x] : v) w.emplace_back(rows[i], x);
      basis.push_back(std::move(w));
    }
    ic.basis.push_back(std::move(basis));
    ic.complex.ranks.push_back(local[j].size());
  }
  for (int j = 0; j <= m; ++j) {
    if (j == 0) {
      ic.complex.boundaries.emplace_back(0, ic.complex.ranks[0]);
      continue;
    }
    // Boundary rows restricted to allowable (j-1)-chains, in their coordinates.
    const auto rows = chains.allowed_rows(j - 1);
    std::unordered_map<std::size_t, std::size_t> to_local;
    for (std::size_t i = 0; i < rows.size(); ++i) to_local.emplace(rows[i], i);
    SparseMatrixQ b(ic.complex.ranks[j - 1], ic.complex.ranks[j]);
    for (std::size_t k = 0; k < local[j].size(); ++k) {
      SparseVectorQ image;
      for (const auto& [row, x] : d[j].apply(local[j][k])) image.emplace_back(to_local.at(row), x);
      auto coords = echelon_coordinates(local[j - 1], image);
      if (!coords) throw Error(ErrorCode::RankMismatch, "boundary of an intersection chain left the complex");
      b.set_column(k, std::move(*coords));
    }
    ic.complex.boundaries.push_back(std::move(b));
  }
  return ic;
}

bool ConeFormulaReport::passed() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeCheck& c) { return c.ok(); });
}

StratifiedComplex cone_stratified(const StratifiedComplex& link) {
  const auto& l = link.complex();
  const Vertex apex = l.vertices().empty() ? 0 : l.vertices().back() + 1;
  std::vector<SimplicialComplex> levels{SimplicialComplex::generated_by({{apex}})};
  for (int j = 1; j <= link.dim(); ++j) levels.push_back(cone(link.level(j - 1), apex));
  return StratifiedComplex(cone(l, apex), std::move(levels));
}

namespace {

std::vector<DegreeCheck> truncation_pattern(const std::vector<int>& link_ih,
                                            const std::vector<int>& cone_ih, int threshold,
                                            int degree_zero_below) {
  std::vector<DegreeCheck> out;
  for (int j = 0; j < static_cast<int>(cone_ih.size()); ++j) {
    int expected = 0;
    if (j < threshold) expected = j < static_cast<int>(link_ih.size()) ? link_ih[j] : 0;
    else if (j == 0) expected = degree_zero_below;
    out.push_back({j, expected, cone_ih[j]});
  }
  return out;
}

}  // namespace

ConeFormulaReport cone_formula_check(const StratifiedComplex& link, const Perversity& p) {
  const int l = link.dim();
  if (p.dim() != l + 1)
    throw Error(ErrorCode::BadDimension, "perversity must be for the cone, dimension " +
                                             std::to_string(l + 1));
  ConeFormulaReport report;
  report.link_dim = l;
  report.threshold = l - p.at(l + 1);
  report.link_ih = ih_betti(link, p.truncated(l));
  report.cone_ih = ih_betti(cone_stratified(link), p);
  report.degrees = truncation_pattern(report.link_ih, report.cone_ih, report.threshold, 1);
  return report;
}

bool StalkCheck::ok() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeCheck& c) { return c.ok(); });
}

bool StalkReport::passed() const {
  return std::all_of(vertices.begin(), vertices.end(), [](const StalkCheck& c) { return c.ok(); });
}

StalkReport deligne_stalk_check(const StratifiedComplex& sc, const Perversity& p,
                                const Coefficients& coeff) {
  check_inputs(sc, p);
  const int m = sc.dim();
  StalkReport report;
  for (Vertex v : sc.complex().vertices()) {
    if (sc.is_regular(v)) continue;
    StalkCheck check;
    check.vertex = v;
    check.codim = m - sc.depth(v);
    // The closed star is the cone on the link with v as a point stratum,
    // whatever the dimension of the stratum through v.
    check.threshold = (m - 1) - p.at(m);
    const auto st = star(sc.complex(), {v});
    const auto lk = link(sc.complex(), {v});
    check.star_ih = ih_betti(sc.restricted_to(st), p, coeff);
    check.link_ih = ih_betti(sc.restricted_to(lk, 1), p.truncated(m - 1), coeff);
    int zero_below = 1;
    if (!coeff.is_constant()) {
      const auto regular = st.full_subcomplex([&](Vertex u) { return sc.is_regular(u); });
      zero_below = static_cast<int>(global_sections(restrict(*coeff.system(), regular)).dimension);
    }
    check.degrees = truncation_pattern(check.link_ih, check.star_ih, check.threshold, zero_below);
    report.vertices.push_back(std::move(check));
  }
  return report;
}

}  // namespace bcover
