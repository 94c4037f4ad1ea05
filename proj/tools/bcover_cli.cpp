// Command-line front end: spec files in, reports out.
//
// Exit status: 0 success, 1 invalid input, 2 decomposition failed,
// 3 internal cross-check failed.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bcover/covering.hpp"
#include "bcover/decomposition.hpp"
#include "bcover/error.hpp"
#include "bcover/fixtures.hpp"
#include "bcover/intersection.hpp"
#include "bcover/local_system.hpp"
#include "bcover/spec_file.hpp"

using namespace bcover;

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write " + out_path);
  f << text;
}

// "lower", "upper" or explicit values p(2),...,p(m) separated by commas.
Perversity parse_perversity(const std::string& text, int m) {
  if (text == "lower" || text == "upper") return Perversity::named(text, m);
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "perversity must be lower, upper or p(2),...,p(m)");
    }
  }
  return Perversity(m, std::move(values));
}

// Stratification used for IH: the base refined by R when R is present.
StratifiedComplex analysis_stratification(const PreparedSpace& space) {
  if (space.branch.complex().empty()) return space.base;
  return refine_stratification(space.base, space.branch);
}

std::string cmd_generators(const SpecFile& spec) {
  auto space = prepare_space(spec);
  auto pres = prepare_presentation(spec, space);
  std::ostringstream out;
  out << "basepoint: " << pres.basepoint() << "\n";
  out << "complement: " << pres.complex().count(0) << " vertices, " << pres.complex().count(1)
      << " edges, " << pres.complex().count(2) << " triangles\n";
  out << "spanning tree (" << pres.tree().size() << " edges):";
  for (const auto& e : pres.tree()) out << " " << e[0] << "-" << e[1];
  out << "\ngenerators (" << pres.generators().size() << "):\n";
  for (std::size_t i = 0; i < pres.generators().size(); ++i)
    out << "  " << i << " " << pres.generator_name(i) << "\n";
  out << "relators: " << pres.relators().size() << "\n";
  return out.str();
}

std::string cmd_homology(const SpecFile& spec, bool cover) {
  auto space = prepare_space(spec);
  std::ostringstream out;
  out << "H(Y): " << join(betti(space.base.complex())) << "\n";
  if (!space.branch.complex().empty())
    out << "H(R): " << join(betti(space.branch.complex())) << "\n";
  if (cover) {
    auto c = fox_complete(build_cover_spec(spec));
    out << "H(X): " << join(betti(c.total)) << "\n";
    out << "X: " << c.total.count(0) << " vertices, " << c.total.size() << " simplices\n";
  }
  return out.str();
}

std::string cmd_twisted(const SpecFile& spec) {
  auto s = build_cover_spec(spec);
  auto push = pushforward_local_system(s.presentation, s.monodromy);
  auto split = trace_split(push);
  const auto& c = s.complement;
  std::ostringstream out;
  out << "complement Y - R: " << c.count(0) << " vertices\n";
  out << "H(Y - R): " << join(betti(c)) << "\n";
  out << "H(Y - R; pushforward): " << join(twisted_betti(c, push)) << "\n";
  out << "H(Y - R; L): " << join(twisted_betti(c, split.kernel)) << "\n";
  out << "global sections of L: " << global_sections(split.kernel).dimension << "\n";
  return out.str();
}

std::string cmd_ih(const SpecFile& spec, const std::string& perversity, bool twisted) {
  auto space = prepare_space(spec);
  auto sc = analysis_stratification(space);
  const auto p = parse_perversity(perversity, sc.dim());
  std::ostringstream out;
  out << "perversity: " << join(p.values()) << "\n";
  out << "H(Y): " << join(betti(sc.complex())) << "\n";
  out << "IH(Y): " << join(ih_betti(sc, p)) << "\n";
  if (twisted) {
    auto s = build_cover_spec(spec);
    auto kernel = trace_split(pushforward_local_system(s.presentation, s.monodromy)).kernel;
    out << "IH(Y; L): " << join(ih_betti(sc, p, Coefficients::twisted(kernel))) << "\n";
  }
  return out.str();
}

std::string cmd_fibers(const SpecFile& spec) {
  auto s = build_cover_spec(spec);
  auto rows = fiber_rank_report(s);
  std::ostringstream out;
  out << "degree " << s.degree() << ", " << rows.size() << " branch simplices\n";
  bool all = true;
  for (const auto& r : rows) {
    out << "  " << format_simplex(r.simplex) << " orbits " << r.orbits << ", 1+inv "
        << r.invariants_plus_one << (r.ok() ? "" : "  MISMATCH") << "\n";
    all = all && r.ok();
  }
  auto codim = codim_check(s);
  out << "codim: " << codim.codim << (codim.applicable ? " (all fibers full)" : "")
      << (codim.non_minimal ? ", no branching over R" : "") << "\n";
  out << "result: " << (all ? "columns agree" : "columns DIFFER") << "\n";
  return out.str();
}

std::string cmd_cone_check(const SpecFile& spec, const std::string& perversity, bool& passed) {
  auto space = prepare_space(spec);
  auto sc = analysis_stratification(space);
  const int m = sc.dim();
  const auto p = parse_perversity(perversity, m);
  std::ostringstream out;
  passed = true;
  for (Vertex v : sc.singular_set().vertices()) {
    auto lk = sc.restricted_to(link(sc.complex(), {v}), 1);
    auto r = cone_formula_check(lk, p);
    out << "vertex " << v << ": link IH " << join(r.link_ih) << ", cone IH " << join(r.cone_ih)
        << ", threshold " << r.threshold << (r.passed() ? ", ok" : ", FAILED") << "\n";
    passed = passed && r.passed();
  }
  auto stalks = deligne_stalk_check(sc, p);
  for (const auto& c : stalks.vertices)
    out << "stalk " << c.vertex << " (codim " << c.codim << "): star IH " << join(c.star_ih)
        << ", link IH " << join(c.link_ih) << (c.ok() ? ", ok" : ", FAILED") << "\n";
  passed = passed && stalks.passed();
  out << "result: " << (passed ? "all checks pass" : "checks FAILED") << "\n";
  return out.str();
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, what + " must be a comma-separated list of integers");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branched covers and intersection homology of simplicial pseudomanifolds"};
  app.require_subcommand(1);
  std::string spec_path, out_path, perversity;
  bool json = false, cover = false, twisted = false;

  auto* gen = app.add_subcommand("generators", "List the complement presentation");
  gen->add_option("spec", spec_path, "Spec file")->required();

  auto* verify = app.add_subcommand("verify", "Check the decomposition degree by degree");
  verify->add_option("spec", spec_path, "Spec file")->required();
  verify->add_option("--perversity", perversity, "lower or upper (default: from the file)");
  verify->add_flag("--json", json, "Structured output");
  verify->add_option("--out", out_path, "Write the report to a file");

  std::string fixture_name, perm_text, exponents_text;
  std::optional<int> points, degree;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in spec file");
  fixture->add_option("name", fixture_name, "Fixture name")->required();
  fixture->add_option("--points", points, "Branch points (sphere-branched)");
  fixture->add_option("--degree", degree, "Cover degree");
  fixture->add_option("--perm", perm_text, "Image array, e.g. 1,2,0 (circle-cover)");
  fixture->add_option("--exponents", exponents_text, "Local monodromies (sphere-branched)");
  fixture->add_option("--out", out_path, "Write the spec to a file");

  auto* homology = app.add_subcommand("homology", "Betti numbers of Y, R and optionally X");
  homology->add_option("spec", spec_path, "Spec file")->required();
  homology->add_flag("--cover", cover, "Also build the branched cover");

  auto* tw = app.add_subcommand("twisted", "Homology of the complement with local coefficients");
  tw->add_option("spec", spec_path, "Spec file")->required();

  auto* ih = app.add_subcommand("ih", "Intersection homology of the base");
  ih->add_option("spec", spec_path, "Spec file")->required();
  ih->add_option("--perversity", perversity, "lower, upper or p(2),...,p(m)");
  ih->add_flag("--twisted", twisted, "Also use the sum-zero local system");

  auto* fibers = app.add_subcommand("fibers", "Fiber ranks over the branch locus");
  fibers->add_option("spec", spec_path, "Spec file")->required();

  auto* cone = app.add_subcommand("cone-check", "Cone formula and stalk checks at singular vertices");
  cone->add_option("spec", spec_path, "Spec file")->required();
  cone->add_option("--perversity", perversity, "lower, upper or p(2),...,p(m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*fixture) {
      FixtureParams params;
      params.points = points;
      params.degree = degree;
      if (!perm_text.empty()) params.perm = parse_int_list(perm_text, "--perm");
      if (!exponents_text.empty()) params.exponents = parse_int_list(exponents_text, "--exponents");
      emit(dump_spec(make_fixture(fixture_name, params)), out_path);
      return 0;
    }

    const SpecFile spec = load_spec(spec_path);
    if (perversity.empty()) perversity = spec.options.perversity;
    if (*gen) {
      std::cout << cmd_generators(spec);
    } else if (*verify) {
      if (perversity != "lower" && perversity != "upper")
        throw Error(ErrorCode::BadParams, "--perversity must be lower or upper");
      auto s = build_cover_spec(spec);
      auto report = verify_branched(s, perversity);
      emit(json ? to_json(report) : to_text(report), out_path);
      return report.exit_code();
    } else if (*homology) {
      std::cout << cmd_homology(spec, cover);
    } else if (*tw) {
      std::cout << cmd_twisted(spec);
    } else if (*ih) {
      std::cout << cmd_ih(spec, perversity, twisted);
    } else if (*fibers) {
      std::cout << cmd_fibers(spec);
    } else if (*cone) {
      bool passed = true;
      std::cout << cmd_cone_check(spec, perversity, passed);
      return passed ? 0 : 3;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
