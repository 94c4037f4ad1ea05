#include "bcover/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "bcover/error.hpp"

namespace bcover {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    fail(field, "integer out of range");
  return static_cast<int>(v);
}

std::vector<Simplex> simplex_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of simplices");
  std::vector<Simplex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) fail(f, "expected an array of vertex ids");
    Simplex s;
    for (std::size_t k = 0; k < j[i].size(); ++k)
      s.push_back(as_int(j[i][k], f + "[" + std::to_string(k) + "]"));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<Simplex>> level_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of levels");
  std::vector<std::vector<Simplex>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(simplex_list(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(where.empty() ? key : where + "." + key, "unknown field");
  }
}

// Validates a list as a complex, reporting errors against the field name.
SimplicialComplex checked_complex(const std::vector<Simplex>& raw, const std::string& field) {
  try {
    return validate_complex(raw);
  } catch (const Error& e) {
    std::string what = e.what();
    auto colon = what.find(": ");
    throw Error(e.code(), field + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
}

SimplicialComplex checked_sub(const std::vector<Simplex>& raw, const SimplicialComplex& whole,
                              const std::string& field) {
  auto c = checked_complex(raw, field);
  if (!c.is_subcomplex_of(whole))
    throw Error(ErrorCode::NotASubcomplex, field + " is not a subcomplex of the complex");
  return c;
}

std::string dump_simplices(const std::vector<Simplex>& list) {
  json j = json::array();
  for (const auto& s : list) j.push_back(s);
  return j.dump();
}

std::string dump_levels(const std::vector<std::vector<Simplex>>& levels,
                        const std::string& indent) {
  if (levels.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out += indent + "  " + dump_simplices(levels[i]);
    out += i + 1 < levels.size() ? ",\n" : "\n";
  }
  return out + indent + "]";
}

}  // namespace

std::pair<Vertex, Vertex> parse_edge_name(const std::string& name) {
  auto arrow = name.find("->");
  if (arrow == std::string::npos) fail("assignments." + name, "expected \"a->b\"");
  auto number = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail("assignments." + name, "expected \"a->b\" with vertex ids");
    try {
      return static_cast<Vertex>(std::stoi(part));
    } catch (const std::out_of_range&) {
      fail("assignments." + name, "vertex id out of range");
    }
  };
  return {number(name.substr(0, arrow)), number(name.substr(arrow + 2))};
}

SpecFile parse_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("<input>", std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
  if (!root.is_object()) fail("<input>", "top level must be an object");
  reject_unknown(root,
                 {"complex", "stratification", "branch", "branch_stratification", "monodromy",
                  "options"},
                 "");

  SpecFile spec;
  if (!root.contains("complex")) fail("complex", "missing");
  spec.complex = simplex_list(root["complex"], "complex");
  if (root.contains("stratification"))
    spec.stratification = level_list(root["stratification"], "stratification");
  if (root.contains("branch")) spec.branch = simplex_list(root["branch"], "branch");
  if (root.contains("branch_stratification"))
    spec.branch_stratification =
        level_list(root["branch_stratification"], "branch_stratification");

  if (root.contains("monodromy")) {
    const json& m = root["monodromy"];
    if (!m.is_object()) fail("monodromy", "expected an object");
    reject_unknown(m, {"degree", "basepoint", "assignments"}, "monodromy");
    MonodromyInput in;
    if (!m.contains("degree")) fail("monodromy.degree", "missing");
    in.degree = as_int(m["degree"], "monodromy.degree");
    if (in.degree < 1) fail("monodromy.degree", "must be at least 1");
    if (!m.contains("basepoint")) fail("monodromy.basepoint", "missing");
    in.basepoint = as_int(m["basepoint"], "monodromy.basepoint");
    if (m.contains("assignments")) {
      const json& a = m["assignments"];
      if (!a.is_object()) fail("monodromy.assignments", "expected an object");
      for (const auto& [key, value] : a.items()) {
        const std::string f = "monodromy.assignments." + key;
        parse_edge_name(key);
        if (!value.is_array()) fail(f, "expected an image array");
        std::vector<int> image;
        for (std::size_t i = 0; i < value.size(); ++i)
          image.push_back(as_int(value[i], f + "[" + std::to_string(i) + "]"));
        in.assignments.emplace(key, std::move(image));
      }
    }
    spec.monodromy = std::move(in);
  }

  if (root.contains("options")) {
    const json& o = root["options"];
    if (!o.is_object()) fail("options", "expected an object");
    reject_unknown(o, {"perversity", "subdivisions"}, "options");
    if (o.contains("perversity")) {
      if (!o["perversity"].is_string()) fail("options.perversity", "expected a string");
      spec.options.perversity = o["perversity"].get<std::string>();
      if (spec.options.perversity != "lower" && spec.options.perversity != "upper")
        fail("options.perversity", "expected \"lower\" or \"upper\"");
    }
    if (o.contains("subdivisions")) {
      spec.options.subdivisions = as_int(o["subdivisions"], "options.subdivisions");
      if (spec.options.subdivisions < 0 || spec.options.subdivisions > 2)
        fail("options.subdivisions", "must be 0, 1 or 2");
    }
  }
  return spec;
}

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string dump_spec(const SpecFile& spec) {
  std::string out = "{\n";
  out += "  \"complex\": " + dump_simplices(spec.complex);
  if (!spec.stratification.empty())
    out += ",\n  \"stratification\": " + dump_levels(spec.stratification, "  ");
  if (!spec.branch.empty()) out += ",\n  \"branch\": " + dump_simplices(spec.branch);
  if (!spec.branch_stratification.empty())
    out += ",\n  \"branch_stratification\": " + dump_levels(spec.branch_stratification, "  ");
  if (spec.monodromy) {
    const auto& m = *spec.monodromy;
    out += ",\n  \"monodromy\": {\n";
    out += "    \"degree\": " + std::to_string(m.degree) + ",\n";
    out += "    \"basepoint\": " + std::to_string(m.basepoint) + ",\n";
    out += "    \"assignments\": {";
    // Order generators numerically rather than by string.
    std::vector<std::pair<std::pair<Vertex, Vertex>, std::string>> keys;
    for (const auto& [k, _] : m.assignments) keys.push_back({parse_edge_name(k), k});
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out += i == 0 ? "\n" : ",\n";
      out += "      " + json(keys[i].second).dump() + ": " +
             json(m.assignments.at(keys[i].second)).dump();
    }
    out += keys.empty() ? "}\n" : "\n    }\n";
    out += "  }";
  }
  out += ",\n  \"options\": {\"perversity\": " + json(spec.options.perversity).dump() +
         ", \"subdivisions\": " + std::to_string(spec.options.subdivisions) + "}";
  out += "\n}\n";
  return out;
}

PreparedSpace prepare_space(const SpecFile& spec) {
  auto base = checked_complex(spec.complex, "complex");
  std::vector<SimplicialComplex> levels;
  for (std::size_t i = 0; i < spec.stratification.size(); ++i)
    levels.push_back(
        checked_sub(spec.stratification[i], base, "stratification[" + std::to_string(i) + "]"));
  SimplicialComplex branch;
  if (!spec.branch.empty()) branch = checked_sub(spec.branch, base, "branch");
  std::vector<SimplicialComplex> branch_levels;
  for (std::size_t i = 0; i < spec.branch_stratification.size(); ++i)
    branch_levels.push_back(checked_sub(spec.branch_stratification[i], branch,
                                        "branch_stratification[" + std::to_string(i) + "]"));

  for (int round = 0; round < spec.options.subdivisions; ++round) {
    Subdivision sd(base);
    for (auto& l : levels) l = sd.image_of(l);
    branch = sd.image_of(branch);
    for (auto& l : branch_levels) l = sd.image_of(l);
    base = sd.result();
  }

  PreparedSpace out;
  out.base = StratifiedComplex::from_descending(std::move(base), std::move(levels));
  out.branch = StratifiedComplex::from_descending(std::move(branch), std::move(branch_levels));
  return out;
}

EdgePathPresentation prepare_presentation(const SpecFile& spec, const PreparedSpace& space) {
  const auto& r = space.branch.complex();
  Vertex basepoint = -1;
  if (spec.monodromy) {
    basepoint = spec.monodromy->basepoint;
  } else {
    for (Vertex v : space.base.complex().vertices())
      if (!r.has_vertex(v)) {
        basepoint = v;
        break;
      }
    if (basepoint < 0) throw Error(ErrorCode::BadBasepoint, "every vertex lies on the branch locus");
  }
  return BranchedCoverSpec::complement_presentation(space.base, r, basepoint);
}

MonodromyRep resolve_monodromy(const EdgePathPresentation& p, const MonodromyInput& input) {
  MonodromyRep rep;
  rep.degree = input.degree;
  std::vector<std::optional<Permutation>> images(p.generators().size());
  for (const auto& [key, image] : input.assignments) {
    auto [a, b] = parse_edge_name(key);
    Simplex edge = a < b ? Simplex{a, b} : Simplex{b, a};
    auto gi = p.generator_index(edge);
    if (!gi) fail("monodromy.assignments." + key, "not a generator of the complement presentation");
    if (images[*gi]) fail("monodromy.assignments." + key, "generator assigned twice");
    Permutation perm(image);
    if (perm.degree() != input.degree)
      throw Error(ErrorCode::DegreeMismatch, "monodromy.assignments." + key + " has degree " +
                                                 std::to_string(perm.degree()) + ", expected " +
                                                 std::to_string(input.degree));
    images[*gi] = a < b ? perm : perm.inverse();
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i])
      throw Error(ErrorCode::MissingGenerator, "no assignment for generator " + p.generator_name(i));
    rep.images.push_back(*images[i]);
  }
  return rep;
}

BranchedCoverSpec build_cover_spec(const SpecFile& spec) {
  if (!spec.monodromy) fail("monodromy", "missing");
  auto space = prepare_space(spec);
  BranchedCoverSpec::validate_space(space.base, space.branch);
  auto pres = prepare_presentation(spec, space);
  auto rep = resolve_monodromy(pres, *spec.monodromy);
  return BranchedCoverSpec::make(std::move(space.base), std::move(space.branch),
                                 spec.monodromy->basepoint, std::move(rep));
}

}  // namespace bcover
