#include "bcover/decomposition.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "bcover/error.hpp"
#include "json.hpp"

namespace bcover {

namespace {

std::vector<int> padded(std::vector<int> v, std::size_t n) {
  v.resize(std::max(n, v.size()), 0);
  return v;
}

std::vector<int> compare_sum(std::vector<int>& lhs, std::vector<int>& a, std::vector<int>& b) {
  const std::size_t n = std::max({lhs.size(), a.size(), b.size()});
  lhs = padded(lhs, n);
  a = padded(a, n);
  b = padded(b, n);
  std::vector<int> eq(n);
  for (std::size_t j = 0; j < n; ++j) eq[j] = lhs[j] == a[j] + b[j] ? 1 : 0;
  return eq;
}

bool all_set(const std::vector<int>& flags) {
  return std::all_of(flags.begin(), flags.end(), [](int f) { return f == 1; });
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

LocalSystemQ kernel_system(const BranchedCoverSpec& spec) {
  return trace_split(pushforward_local_system(spec.presentation, spec.monodromy)).kernel;
}

std::vector<FiberRow> fiber_rows(const BranchedCoverSpec& spec, const LocalSystemQ& kernel) {
  std::vector<FiberRow> rows;
  const auto& y = spec.base.complex();
  const auto& r = spec.branch.complex();
  for (const auto& tau : r.all_simplices()) {
    FiberRow row;
    row.simplex = tau;
    row.orbits = fiber_cardinality(spec, tau);
    const auto piece = punctured_star(y, r, tau);
    row.invariants_plus_one =
        1 + static_cast<int>(global_sections(restrict(kernel, piece)).dimension);
    rows.push_back(std::move(row));
  }
  return rows;
}

CrossCheck check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

}  // namespace

bool UnbranchedReport::passed() const { return all_set(equal); }

UnbranchedReport verify_unbranched(const EdgePathPresentation& p, const MonodromyRep& rep) {
  validate_monodromy(p, rep);
  UnbranchedReport report;
  report.degree = rep.degree;
  const auto cover = build_cover(p, rep);
  const auto push = pushforward_local_system(p, rep);
  const auto split = trace_split(push);
  report.betti_cover = betti(cover.total);
  report.betti_base = betti(p.complex());
  report.betti_kernel = twisted_betti(p.complex(), split.kernel);
  report.betti_pushforward = twisted_betti(p.complex(), push);
  report.equal = compare_sum(report.betti_cover, report.betti_base, report.betti_kernel);
  report.betti_pushforward = padded(report.betti_pushforward, report.equal.size());
  return report;
}

std::vector<FiberRow> fiber_rank_report(const BranchedCoverSpec& spec) {
  return fiber_rows(spec, kernel_system(spec));
}

CodimReport codim_check(const BranchedCoverSpec& spec) {
  CodimReport report;
  const auto& r = spec.branch.complex();
  if (r.empty()) return report;
  report.codim = spec.dim() - r.dim();
  report.applicable = report.codim >= 3;
  Simplex first_bad;
  for (const auto& tau : r.all_simplices()) {
    if (fiber_cardinality(spec, tau) != spec.degree()) {
      report.fibers_full = false;
      first_bad = tau;
      break;
    }
  }
  report.non_minimal = report.fibers_full;
  if (report.applicable && !report.fibers_full)
    throw Error(ErrorCode::BranchingAtHighCodim,
                "the cover branches over " + format_simplex(first_bad) + " in codimension " +
                    std::to_string(report.codim));
  return report;
}

bool DecompositionReport::decomposition_holds() const { return all_set(equal); }

bool DecompositionReport::cross_checks_pass() const {
  return std::all_of(cross_checks.begin(), cross_checks.end(),
                     [](const CrossCheck& c) { return c.ok; });
}

int DecompositionReport::exit_code() const {
  if (!decomposition_holds()) return 2;
  if (!cross_checks_pass()) return 3;
  return 0;
}

DecompositionReport verify_branched(const BranchedCoverSpec& spec, const std::string& perversity) {
  DecompositionReport report;
  const int m = spec.dim();
  const auto p = Perversity::named(perversity, m);
  report.perversity_name = perversity;
  report.perversity = p.values();
  report.degree = spec.degree();
  report.base_dim = m;
  report.base_is_manifold = !spec.base.has_singular_set();

  report.connectivity = complement_connectivity_check(spec);
  if (!report.connectivity.passed()) {
    const auto bad = report.connectivity.failing().front();
    throw Error(ErrorCode::DisconnectedPuncturedStar,
                "punctured star of " + format_simplex(bad) + " is not connected; subdivide the base");
  }
  const auto cover = fox_complete(spec);
  report.cover_vertices = cover.total.count(0);
  report.cover_simplices = cover.total.size();
  const auto refined = refine_stratification(spec.base, spec.branch);
  const auto pulled = pullback_stratification(cover, refined);
  for (const auto& s : refined.strata())
    report.refined_strata.push_back({s.level, s.dim, s.simplices.size(), s.simplices.front()});

  const auto kernel = kernel_system(spec);
  const auto twisted = Coefficients::twisted(kernel);
  report.betti_cover = betti(cover.total);
  report.betti_base = betti(spec.base.complex());
  report.ih_cover = ih_betti(pulled, p);
  report.ih_base = ih_betti(refined, p);
  report.ih_kernel = ih_betti(refined, p, twisted);
  report.equal = compare_sum(report.ih_cover, report.ih_base, report.ih_kernel);
  report.betti_cover = padded(report.betti_cover, report.equal.size());
  report.betti_base = padded(report.betti_base, report.equal.size());

  report.fibers = fiber_rows(spec, kernel);
  for (auto& row : report.fibers) row.lifts = static_cast<int>(cover.fiber_size(row.simplex));
  report.codim = codim_check(spec);

  auto& checks = report.cross_checks;
  try {
    const auto rh = riemann_hurwitz_check(cover);
    checks.push_back(check("riemann-hurwitz", true,
                           "chi(X) = " + std::to_string(rh.chi_homology) + " from fibers and homology"));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ChiMismatch) throw;
    checks.push_back(check("riemann-hurwitz", false, e.what()));
  }

  const long long chi_x = alternating_sum(report.ih_cover);
  const long long chi_y = alternating_sum(report.ih_base) + alternating_sum(report.ih_kernel);
  checks.push_back(check("euler", chi_x == chi_y,
                         std::to_string(chi_x) + " vs " + std::to_string(chi_y)));

  const bool fibers_ok = std::all_of(report.fibers.begin(), report.fibers.end(),
                                     [](const FiberRow& r) { return r.ok(); });
  checks.push_back(check("fiber-ranks", fibers_ok,
                         std::to_string(report.fibers.size()) + " branch simplices"));

  // Fiber sizes cannot jump inside a stratum of the refined stratification.
  std::map<Simplex, int> orbit_of;
  for (const auto& row : report.fibers) orbit_of[row.simplex] = row.orbits;
  bool constant = true;
  for (const auto& s : refined.strata()) {
    std::optional<int> seen;
    for (const auto& sigma : s.simplices) {
      auto it = orbit_of.find(sigma);
      if (it == orbit_of.end()) continue;
      if (seen && *seen != it->second) constant = false;
      seen = it->second;
    }
  }
  checks.push_back(check("fibers-constant-on-strata", constant));

  const int components_x = static_cast<int>(components(cover.total).size());
  const int orbits_x = static_cast<int>(orbits(spec.degree(), spec.monodromy.images).size());
  checks.push_back(check("components",
                         report.betti_cover[0] == components_x && components_x == orbits_x,
                         "b0 " + std::to_string(report.betti_cover[0]) + ", components " +
                             std::to_string(components_x) + ", monodromy orbits " +
                             std::to_string(orbits_x)));

  checks.push_back(check("refined-stratification",
                         refined.is_pseudomanifold() && refined.levels_full()));
  checks.push_back(check("pullback-stratification",
                         pulled.is_pseudomanifold() && pulled.levels_full()));

  if (report.base_is_manifold && !spec.branch.has_singular_set()) {
    checks.push_back(check("manifold-base", report.ih_base == report.betti_base,
                           "IH(Y) " + join(report.ih_base) + ", H(Y) " + join(report.betti_base)));
    checks.push_back(check("manifold-cover", report.ih_cover == report.betti_cover,
                           "IH(X) " + join(report.ih_cover) + ", H(X) " +
                               join(report.betti_cover)));
  }

  const auto complement = verify_unbranched(spec.presentation, spec.monodromy);
  checks.push_back(check("complement", complement.passed(),
                         "H(cover of Y - R) " + join(complement.betti_cover)));
  checks.push_back(check("pushforward", complement.betti_pushforward == complement.betti_cover,
                         "H(Y - R; pushforward) " + join(complement.betti_pushforward)));

  const bool stalks = deligne_stalk_check(refined, p).passed() &&
                      deligne_stalk_check(refined, p, twisted).passed();
  checks.push_back(check("stalks", stalks));
  return report;
}

std::string to_text(const DecompositionReport& r) {
  std::ostringstream out;
  out << "perversity: " << r.perversity_name << " (" << join(r.perversity) << ")\n";
  out << "base: dimension " << r.base_dim << (r.base_is_manifold ? ", manifold" : ", singular")
      << ", cover degree " << r.degree << "\n";
  out << "cover: " << r.cover_vertices << " vertices, " << r.cover_simplices << " simplices\n";
  out << "refined strata:\n";
  for (const auto& s : r.refined_strata)
    out << "  level " << s.level << ", dim " << s.dim << ", " << s.simplices
        << " simplices, least " << format_simplex(s.least) << "\n";
  if (r.refined_strata.empty()) out << "  (none)\n";

  out << std::left << std::setw(8) << "degree" << std::setw(8) << "H(X)" << std::setw(8)
      << "IH(X)" << std::setw(8) << "IH(Y)" << std::setw(10) << "IH(Y;L)"
      << "equal\n";
  for (std::size_t j = 0; j < r.equal.size(); ++j)
    out << std::setw(8) << j << std::setw(8) << r.betti_cover[j] << std::setw(8) << r.ih_cover[j]
        << std::setw(8) << r.ih_base[j] << std::setw(10) << r.ih_kernel[j]
        << (r.equal[j] ? "yes" : "NO") << "\n";

  out << "fibers over R:\n";
  if (r.fibers.empty()) out << "  (R is empty)\n";
  for (const auto& f : r.fibers)
    out << "  " << std::setw(16) << format_simplex(f.simplex) << " orbits " << f.orbits
        << ", 1+inv " << f.invariants_plus_one << ", lifts " << f.lifts
        << (f.ok() ? "" : "  MISMATCH") << "\n";

  out << "connectivity: " << (r.connectivity.passed() ? "passed" : "failed") << " ("
      << r.connectivity.downstairs.size() << " downstairs, " << r.connectivity.upstairs.size()
      << " upstairs)\n";
  if (r.codim.codim == 0)
    out << "codim: R is empty\n";
  else
    out << "codim: " << r.codim.codim
        << (r.codim.applicable ? ", fibers full" : ", high-codimension check not applicable")
        << (r.codim.non_minimal ? ", no branching over R" : "") << "\n";
  out << "cross-checks:\n";
  for (const auto& c : r.cross_checks)
    out << "  " << std::setw(26) << c.name << (c.ok ? "ok" : "FAILED")
        << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  out << "result: "
      << (r.decomposition_holds() ? "decomposition holds in every degree"
                                  : "decomposition FAILS")
      << (r.cross_checks_pass() ? "" : "; cross-checks failed") << "\n";
  return out.str();
}

std::string to_json(const DecompositionReport& r) {
  nlohmann::ordered_json j;
  j["perversity"] = {{"name", r.perversity_name}, {"values", r.perversity}};
  j["degree"] = r.degree;
  j["base_dim"] = r.base_dim;
  j["base_is_manifold"] = r.base_is_manifold ? 1 : 0;
  j["cover"] = {{"vertices", r.cover_vertices}, {"simplices", r.cover_simplices}};
  auto strata = nlohmann::ordered_json::array();
  for (const auto& s : r.refined_strata)
    strata.push_back({{"level", s.level}, {"dim", s.dim}, {"simplices", s.simplices},
                      {"least", s.least}});
  j["refined_strata"] = strata;
  j["betti_cover"] = r.betti_cover;
  j["betti_base"] = r.betti_base;
  j["ih_cover"] = r.ih_cover;
  j["ih_base"] = r.ih_base;
  j["ih_kernel"] = r.ih_kernel;
  j["equal"] = r.equal;
  auto fibers = nlohmann::ordered_json::array();
  for (const auto& f : r.fibers)
    fibers.push_back({{"simplex", f.simplex},
                      {"orbits", f.orbits},
                      {"invariants_plus_one", f.invariants_plus_one},
                      {"lifts", f.lifts},
                      {"ok", f.ok() ? 1 : 0}});
  j["fibers"] = fibers;
  auto failing = nlohmann::ordered_json::array();
  for (const auto& s : r.connectivity.failing()) failing.push_back(s);
  j["connectivity"] = {{"passed", r.connectivity.passed() ? 1 : 0},
                       {"downstairs", r.connectivity.downstairs.size()},
                       {"upstairs", r.connectivity.upstairs.size()},
                       {"failing", failing}};
  j["codim"] = {{"codim", r.codim.codim},
                {"applicable", r.codim.applicable ? 1 : 0},
                {"fibers_full", r.codim.fibers_full ? 1 : 0},
                {"non_minimal", r.codim.non_minimal ? 1 : 0}};
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.cross_checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok ? 1 : 0}, {"detail", c.detail}});
  j["cross_checks"] = checks;
  j["decomposition_holds"] = r.decomposition_holds() ? 1 : 0;
  j["exit_code"] = r.exit_code();
  return j.dump(2) + "\n";
}

std::string to_text(const UnbranchedReport& r) {
  std::ostringstream out;
  out << "unbranched cover of degree " << r.degree << "\n";
  out << std::left << std::setw(8) << "degree" << std::setw(8) << "H(X)" << std::setw(8)
      << "H(Y)" << std::setw(9) << "H(Y;L)" << "equal\n";
  for (std::size_t j = 0; j < r.equal.size(); ++j)
    out << std::setw(8) << j << std::setw(8) << r.betti_cover[j] << std::setw(8)
        << r.betti_base[j] << std::setw(9) << r.betti_kernel[j] << (r.equal[j] ? "yes" : "NO")
        << "\n";
  out << "result: " << (r.passed() ? "decomposition holds in every degree" : "decomposition FAILS")
      << "\n";
  return out.str();
}

std::string to_json(const UnbranchedReport& r) {
  nlohmann::ordered_json j;
  j["degree"] = r.degree;
  j["betti_cover"] = r.betti_cover;
  j["betti_base"] = r.betti_base;
  j["betti_kernel"] = r.betti_kernel;
  j["betti_pushforward"] = r.betti_pushforward;
  j["equal"] = r.equal;
  j["passed"] = r.passed() ? 1 : 0;
  return j.dump(2) + "\n";
}

}  // namespace bcover
