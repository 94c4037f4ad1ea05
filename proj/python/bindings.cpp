#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bcover/complexes.hpp"
#include "bcover/decomposition.hpp"
#include "bcover/error.hpp"
#include "bcover/fixtures.hpp"
#include "bcover/spec_file.hpp"

namespace py = pybind11;
using namespace bcover;

namespace {

StratifiedComplex analysis_space(const PreparedSpace& space) {
  if (space.branch.complex().empty()) return space.base;
  return refine_stratification(space.base, space.branch);
}

std::string fixture(const std::string& name, std::optional<int> points, std::optional<int> degree,
                    std::optional<std::vector<int>> perm,
                    std::optional<std::vector<int>> exponents) {
  return dump_spec(make_fixture(name, {points, degree, perm, exponents}));
}

std::vector<std::string> generators(const std::string& spec_text) {
  auto spec = parse_spec(spec_text);
  auto pres = prepare_presentation(spec, prepare_space(spec));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < pres.generators().size(); ++i) out.push_back(pres.generator_name(i));
  return out;
}

std::vector<int> ih(const std::string& spec_text, const std::string& perversity, bool twisted) {
  auto spec = parse_spec(spec_text);
  auto space = prepare_space(spec);
  auto sc = analysis_space(space);
  const auto p = Perversity::named(perversity, sc.dim());
  if (!twisted) return ih_betti(sc, p);
  auto cover = build_cover_spec(spec);
  auto kernel = trace_split(pushforward_local_system(cover.presentation, cover.monodromy)).kernel;
  return ih_betti(sc, p, Coefficients::twisted(kernel));
}

py::list fiber_report(const std::string& spec_text) {
  py::list rows;
  for (const auto& r : fiber_rank_report(build_cover_spec(parse_spec(spec_text)))) {
    py::dict row;
    row["simplex"] = r.simplex;
    row["orbits"] = r.orbits;
    row["invariants_plus_one"] = r.invariants_plus_one;
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Branched covers and intersection homology of simplicial pseudomanifolds";
  py::register_exception<Error>(m, "BcoverError", PyExc_ValueError);

  m.def("fixture_names", &fixture_names);
  m.def("fixture", &fixture, py::arg("name"), py::arg("points") = py::none(),
        py::arg("degree") = py::none(), py::arg("perm") = py::none(),
        py::arg("exponents") = py::none(), "Spec JSON of a built-in fixture.");
  m.def(
      "normalize_spec", [](const std::string& text) { return dump_spec(parse_spec(text)); },
      "Canonical form of a spec.");
  m.def(
      "betti", [](const std::vector<Simplex>& simplices) { return betti(validate_complex(simplices)); },
      py::arg("simplices"), "Rational Betti numbers of a complex given by all its simplices.");
  m.def("generators", &generators, py::arg("spec"));
  m.def(
      "verify_json",
      [](const std::string& spec_text, const std::string& perversity) {
        return to_json(verify_branched(build_cover_spec(parse_spec(spec_text)), perversity));
      },
      py::arg("spec"), py::arg("perversity") = "lower");
  m.def("ih_betti", &ih, py::arg("spec"), py::arg("perversity") = "lower",
        py::arg("twisted") = false);
  m.def("fiber_report", &fiber_report, py::arg("spec"));
}
