#include "hmorph/serialize.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hmorph {

namespace {

constexpr const char* kFamilyFormat = "hmorph-family/1";
constexpr const char* kMorphismFormat = "hmorph-morphism/1";
constexpr const char* kReportFormat = "hmorph-report/1";

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing member '") + key + "'");
  return j.at(key);
}

// Non-finite values are written as strings so the output stays valid JSON.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  throw FormatError("expected a number");
}

const char* kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Constant: return "constant";
    case FieldKind::TraceForm: return "trace_form";
    case FieldKind::Sum: return "sum";
    case FieldKind::Product: return "product";
    case FieldKind::Scale: return "scale";
    case FieldKind::Quotient: return "quotient";
  }
  return "?";
}

Json children_json(const ScalarField& f) {
  Json out = Json::array();
  for (const auto& c : f.children()) out.push_back(to_json(c));
  return out;
}

std::vector<ScalarField> children_from_json(const Json& j) {
  const Json& arr = member(j, "children");
  if (!arr.is_array()) throw FormatError("'children' must be an array");
  std::vector<ScalarField> out;
  for (const auto& c : arr) out.push_back(field_from_json(c));
  return out;
}

Json eigen_body(const EigenFamily& f) {
  Json j;
  j["lambda"] = to_json(f.lambda);
  j["mu"] = to_json(f.mu);
  Json gens = Json::array();
  for (const auto& g : f.generators) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  return j;
}

EigenFamily eigen_from_body(const Json& j, const GroupDescriptor& g, const std::string& prov) {
  EigenFamily f;
  f.group = g;
  f.provenance = prov;
  f.lambda = complex_from_json(member(j, "lambda"));
  f.mu = complex_from_json(member(j, "mu"));
  for (const auto& gen : member(j, "generators")) f.generators.push_back(field_from_json(gen));
  if (f.generators.empty()) throw FormatError("family has no generators");
  for (const auto& gen : f.generators) {
    if (gen.ambient_size() != 0 && gen.ambient_size() != g.matrix_size()) {
      throw FormatError("generator ambient size does not match group " + g.to_string());
    }
  }
  return f;
}

}  // namespace

Json to_json(Complex c) { return Json::array({number(c.real()), number(c.imag())}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("complex number must be [re, im]");
  return {number_from_json(j[0]), number_from_json(j[1])};
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw FormatError("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) throw FormatError("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const ScalarField& f) {
  Json j;
  j["kind"] = kind_name(f.kind());
  switch (f.kind()) {
    case FieldKind::Constant:
      j["value"] = to_json(f.scalar());
      break;
    case FieldKind::TraceForm: {
      j["ambient_size"] = f.ambient_size();
      Json terms = Json::array();
      for (const auto& t : f.terms()) {
        Json tj;
        tj["block"] = block_name(t.block);
        tj["coefficient"] = to_json(t.coefficient);
        terms.push_back(std::move(tj));
      }
      j["terms"] = std::move(terms);
      break;
    }
    case FieldKind::Scale:
      j["factor"] = to_json(f.scalar());
      j["children"] = children_json(f);
      break;
    case FieldKind::Sum:
    case FieldKind::Product:
    case FieldKind::Quotient:
      j["children"] = children_json(f);
      break;
  }
  return j;
}

ScalarField field_from_json(const Json& j) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "constant") return ScalarField::constant(complex_from_json(member(j, "value")));
  if (kind == "trace_form") {
    std::vector<TraceTerm> terms;
    for (const auto& t : member(j, "terms")) {
      terms.push_back({matrix_from_json(member(t, "coefficient")), parse_block(member(t, "block").get<std::string>())});
    }
    return ScalarField::trace_form(std::move(terms), member(j, "ambient_size").get<int>());
  }
  auto kids = children_from_json(j);
  if (kind == "sum") return ScalarField::sum(std::move(kids));
  if (kind == "product") return ScalarField::product(std::move(kids));
  if (kind == "scale") {
    if (kids.size() != 1) throw FormatError("scale node needs exactly one child");
    return ScalarField::scale(complex_from_json(member(j, "factor")), kids[0]);
  }
  if (kind == "quotient") {
    if (kids.size() != 2) throw FormatError("quotient node needs exactly two children");
    return ScalarField::quotient(kids[0], kids[1]);
  }
  throw FormatError("unknown field kind '" + kind + "'");
}

Json to_json(const Family& f) {
  Json j;
  j["format"] = kFamilyFormat;
  j["group"] = family_group(f).to_string();
  j["provenance"] = family_provenance(f);
  if (const auto* e = std::get_if<EigenFamily>(&f)) {
    j["type"] = "eigenfamily";
    const Json body = eigen_body(*e);
    for (const auto& [k, v] : body.items()) j[k] = v;
  } else {
    const auto& b = std::get<BiEigenFamily>(f);
    j["type"] = "bi-eigenfamily";
    j["mu_cross"] = b.mu_cross ? to_json(*b.mu_cross) : Json(nullptr);
    j["first"] = eigen_body(b.first);
    j["second"] = eigen_body(b.second);
  }
  return j;
}

Family family_from_json(const Json& j) {
  if (member(j, "format") != kFamilyFormat) throw FormatError("not a family file");
  GroupDescriptor g;
  try {
    g = GroupDescriptor::parse(member(j, "group").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  const std::string prov = member(j, "provenance").get<std::string>();
  const std::string type = member(j, "type").get<std::string>();
  if (type == "eigenfamily") return eigen_from_body(j, g, prov);
  if (type != "bi-eigenfamily") throw FormatError("unknown family type '" + type + "'");
  BiEigenFamily b{g, prov, eigen_from_body(member(j, "first"), g, prov), eigen_from_body(member(j, "second"), g, prov),
                  std::nullopt};
  if (const Json& mc = member(j, "mu_cross"); !mc.is_null()) b.mu_cross = complex_from_json(mc);
  return b;
}

Json to_json(const MultiPoly& p) {
  Json j;
  j["vars1"] = p.vars1;
  j["vars2"] = p.vars2;
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms) {
    Json t;
    t["exponents"] = e;
    t["coefficient"] = to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MultiPoly polynomial_from_json(const Json& j) {
  MultiPoly p;
  p.vars1 = member(j, "vars1").get<int>();
  p.vars2 = member(j, "vars2").get<int>();
  try {
    for (const auto& t : member(j, "terms")) {
      p.add(member(t, "exponents").get<std::vector<int>>(), complex_from_json(member(t, "coefficient")));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return p;
}

Json to_json(const RationalMorphism& m) {
  Json j;
  j["format"] = kMorphismFormat;
  j["family"] = to_json(m.family);
  j["numerator"] = to_json(m.numerator);
  j["denominator"] = to_json(m.denominator);
  return j;
}

RationalMorphism morphism_from_json(const Json& j) {
  if (member(j, "format") != kMorphismFormat) throw FormatError("not a morphism file");
  return build_morphism(family_from_json(member(j, "family")), polynomial_from_json(member(j, "numerator")),
                        polynomial_from_json(member(j, "denominator")));
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["format"] = kReportFormat;
  j["command"] = r.command;
  j["subject"] = r.subject;
  j["provenance"] = r.provenance;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = number(r.tolerance);
  j["resampled"] = r.resampled;
  j["pass"] = r.pass();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["residual"] = number(c.residual);
    cj["tolerance"] = number(c.tolerance);
    cj["pass"] = c.pass();
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  Json consts = Json::array();
  for (const auto& c : r.constants) {
    Json cj;
    cj["name"] = c.name;
    cj["value"] = to_json(c.value);
    cj["expected"] = c.expected ? to_json(*c.expected) : Json(nullptr);
    cj["spread"] = number(c.spread);
    cj["count"] = c.count;
    consts.push_back(std::move(cj));
  }
  j["constants"] = std::move(consts);
  j["notes"] = r.notes;
  j["timing"] = {{"wall_time_seconds", number(r.wall_time_seconds)}};
  return j;
}

Json strip_timing(const Json& j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items())
      if (k != "timing") out[k] = strip_timing(v);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hmorph
