#include "cli.hpp"

#include "hmorph/duality.hpp"
#include "hmorph/lemmas.hpp"
#include "hmorph/serialize.hpp"
#include "hmorph/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <regex>
#include <sstream>

namespace hmorph::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  // shared
  int samples = 0;  // 0: command default
  std::uint64_t seed = kDefaultSeed;
  double tol = 0.0;  // 0: command default
  double delta = kPoleGuard;
  double scale = kDefaultSampleScale;
  std::string out;
  // selection
  std::string group;
  std::string lemma;
  std::string theorem;
  std::string family_file;
  std::string morphism_file;
  std::string example;
  // family parameters
  std::string v, u, a, b, xi;
  std::vector<std::string> isotropic;
  // polynomials
  std::string numerator, denominator;
  int degree = 0;
  std::vector<int> bidegree;
  // identities / suite
  int n = 4, p = 2, q = 2;
  int max_size = 6;
  bool dual = false;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::string command_echo(int argc, const char* const* argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

GroupDescriptor parse_group(const std::string& text) {
  try {
    return GroupDescriptor::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FamilyParams family_params(const Args& a) {
  FamilyParams p;
  if (!a.v.empty()) p.v = parse_vector(a.v);
  if (!a.u.empty()) p.u = parse_vector(a.u);
  if (!a.a.empty()) p.a = parse_vector(a.a);
  if (!a.b.empty()) p.b = parse_vector(a.b);
  if (!a.xi.empty()) p.xi = parse_complex(a.xi);
  for (const auto& s : a.isotropic) p.isotropic.push_back(parse_vector(s));
  return p;
}

Family family_from_args(const Args& a) {
  if (!a.family_file.empty()) {
    if (!a.theorem.empty()) throw UsageError("give either --family-file or --theorem, not both");
    return family_from_json(read_json_file(a.family_file));
  }
  if (a.theorem.empty()) throw UsageError("a family needs --theorem or --family-file");
  const GroupDescriptor g = a.group.empty() ? default_group_for(a.theorem) : parse_group(a.group);
  return make_family(g, a.theorem, family_params(a));
}

RationalMorphism morphism_from_args(const Args& a) {
  if (!a.morphism_file.empty()) return morphism_from_json(read_json_file(a.morphism_file));
  if (!a.example.empty()) {
    if (a.example != "sl2" && a.example != "4.3") throw UsageError("unknown example '" + a.example + "'");
    return example_sl2_morphism();
  }
  const Family f = family_from_args(a);
  if (!a.numerator.empty() || !a.denominator.empty()) {
    if (a.numerator.empty() || a.denominator.empty()) throw UsageError("give both --numerator and --denominator");
    return build_morphism(f, parse_polynomial(a.numerator), parse_polynomial(a.denominator));
  }
  std::mt19937_64 rng(a.seed);
  const auto gens = [&] {
    if (const auto* e = std::get_if<EigenFamily>(&f)) return std::pair<int, int>{int(e->generators.size()), 0};
    const auto& b = std::get<BiEigenFamily>(f);
    return std::pair<int, int>{int(b.first.generators.size()), int(b.second.generators.size())};
  }();
  if (!a.bidegree.empty()) {
    if (a.bidegree.size() != 2) throw UsageError("--bidegree takes two integers");
    auto num = random_bihomogeneous(gens.first, gens.second, a.bidegree[0], a.bidegree[1], rng);
    auto den = random_bihomogeneous(gens.first, gens.second, a.bidegree[0], a.bidegree[1], rng);
    return build_morphism(f, num, den);
  }
  if (a.degree > 0) {
    if (gens.second != 0) throw UsageError("a bi-eigenfamily needs --bidegree");
    auto num = random_homogeneous(gens.first, a.degree, rng);
    auto den = random_homogeneous(gens.first, a.degree, rng);
    return build_morphism(f, num, den);
  }
  throw UsageError("a morphism needs --numerator/--denominator, --degree, --bidegree, --example or --morphism-file");
}

VerifyOptions verify_options(const Args& a) {
  VerifyOptions v;
  if (a.samples > 0) v.samples = a.samples;
  if (a.tol > 0.0) v.tol = a.tol;
  v.seed = a.seed;
  v.scale = a.scale;
  v.delta = a.delta;
  return v;
}

MorphismOptions morphism_options(const Args& a) {
  MorphismOptions m;
  if (a.samples > 0) m.samples = a.samples;
  if (a.tol > 0.0) m.tol = a.tol;
  m.seed = a.seed;
  m.scale = a.scale;
  m.delta = a.delta;
  return m;
}

class Emitter {
 public:
  Emitter(const Args& a, std::ostream& out, std::ostream& err) : a_(a), out_(out), err_(err) {}

  void write(const Json& body, const std::string& default_name) {
    std::string path = a_.out;
    if (path.empty()) {
      if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
        path = (std::filesystem::path(dir) / default_name).string();
      }
    }
    if (path.empty()) {
      out_ << dump(body);
    } else {
      write_text_file(path, dump(body));
      err_ << "wrote " << path << "\n";
    }
  }

  int report(VerificationReport r, const std::string& command, const std::string& default_name) {
    r.command = command;
    write(to_json(r), default_name);
    summary(r);
    return r.pass() ? kExitPass : kExitFail;
  }

  void summary(const VerificationReport& r) {
    err_ << (r.pass() ? "PASS" : "FAIL") << " " << (r.provenance.empty() ? "" : r.provenance + " on ") << r.subject
         << " (max residual " << r.max_residual() << ")\n";
    for (const auto& c : r.checks)
      if (!c.pass()) err_ << "  failed " << c.name << ": " << c.residual << " > " << c.tolerance << "\n";
  }

 private:
  const Args& a_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string slug(std::string s) {
  for (char& c : s)
    if (c == ':' || c == ',' || c == '/' || c == ' ') c = '_';
  return s;
}

void add_sampling(CLI::App* sub, Args& a) {
  sub->add_option("--samples", a.samples, "Sample points")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed, "Seed")->capture_default_str();
  sub->add_option("--tol", a.tol, "Tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--delta", a.delta, "Pole guard on |Q|")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--scale", a.scale, "Sampling scale")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_family_flags(CLI::App* sub, Args& a) {
  sub->add_option("--group", a.group, "Group, e.g. gl_r:3, u_pq:2,1");
  sub->add_option("--theorem", a.theorem, "Family selector, e.g. 4.2, 10.2");
  sub->add_option("--family-file", a.family_file, "Family JSON");
  sub->add_option("--v", a.v, "Vector v, comma-separated complex entries");
  sub->add_option("--u", a.u, "Vector u");
  sub->add_option("--a", a.a, "Vector a");
  sub->add_option("--b", a.b, "Vector b");
  sub->add_option("--xi", a.xi, "Complex parameter xi");
  sub->add_option("--isotropic", a.isotropic, "Isotropic vector (repeatable)");
}

void add_out(CLI::App* sub, Args& a) { sub->add_option("--out", a.out, "Output file (default: stdout or $HMORPH_OUT_DIR)"); }

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex num(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex full(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
  static const std::regex imag_only(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i$)");
  std::smatch m;
  if (s.empty()) throw UsageError("empty complex number");
  if (std::regex_match(s, m, imag_only)) {
    const double mag = m[2].matched ? parse_real(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(s, m, full) && m[1].matched) {
    const double re = parse_real(m[1].str());
    if (!m[2].matched) return {re, 0.0};
    const double mag = m[3].matched ? parse_real(m[3].str()) : 1.0;
    return {re, m[2].str() == "-" ? -mag : mag};
  }
  throw UsageError("not a complex number: '" + s + "'");
}

ComplexVector parse_vector(std::string_view text) {
  std::vector<Complex> entries;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) entries.push_back(parse_complex(item));
  if (entries.empty()) throw UsageError("empty vector");
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t k = 0; k < entries.size(); ++k) v(static_cast<Eigen::Index>(k)) = entries[k];
  return v;
}

MultiPoly parse_polynomial(std::string_view text) {
  MultiPoly p;
  bool first = true;
  std::stringstream ss{std::string(text)};
  std::string term;
  auto ints = [](const std::string& s) {
    std::vector<int> out;
    std::stringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      const std::string t = trim(tok);
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw UsageError("bad exponent '" + t + "'");
      }
    }
    return out;
  };
  while (std::getline(ss, term, ';')) {
    if (trim(term).empty()) continue;
    const auto colon = term.find(':');
    if (colon == std::string::npos) throw UsageError("polynomial term needs 'exponents:coefficient': '" + term + "'");
    const std::string exps = term.substr(0, colon);
    const auto bar = exps.find('|');
    const auto e1 = ints(exps.substr(0, bar));
    const auto e2 = bar == std::string::npos ? std::vector<int>{} : ints(exps.substr(bar + 1));
    if (first) {
      p.vars1 = static_cast<int>(e1.size());
      p.vars2 = static_cast<int>(e2.size());
      first = false;
    } else if (p.vars1 != static_cast<int>(e1.size()) || p.vars2 != static_cast<int>(e2.size())) {
      throw UsageError("polynomial terms use different variable counts");
    }
    auto e = e1;
    e.insert(e.end(), e2.begin(), e2.end());
    p.add(e, parse_complex(term.substr(colon + 1)));
  }
  if (first) throw UsageError("empty polynomial");
  return p;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Eigenfamilies and harmonic morphisms on classical matrix groups"};
  app.require_subcommand(1);

  auto* ids = app.add_subcommand("check-identities", "Check the generator matrix identities");
  ids->add_option("--n", a.n, "Size for the unsigned identities (0 skips)")->capture_default_str();
  ids->add_option("--p", a.p, "Signature p")->capture_default_str();
  ids->add_option("--q", a.q, "Signature q")->capture_default_str();
  add_out(ids, a);

  auto* basis = app.add_subcommand("basis", "List and verify the orthonormal Lie algebra basis");
  basis->add_option("--group", a.group, "Group")->required();
  basis->add_flag("--dual", a.dual, "List the compact dual basis and the trace-form sign comparison");
  add_out(basis, a);

  auto* lemma = app.add_subcommand("verify-lemma", "Replay the tau/kappa relations of a coordinate lemma");
  lemma->add_option("--lemma", a.lemma, "4.1, 5.1, 6.1, 8.1, 10.1, 11.1 or 12.1")->required();
  lemma->add_option("--group", a.group, "Group (default per lemma)");
  add_sampling(lemma, a);
  add_out(lemma, a);

  auto* mkfam = app.add_subcommand("make-family", "Build and serialize a family");
  add_family_flags(mkfam, a);
  add_out(mkfam, a);

  auto* vfam = app.add_subcommand("verify-family", "Verify the eigenfamily axioms");
  add_family_flags(vfam, a);
  add_sampling(vfam, a);
  add_out(vfam, a);

  auto morphism_flags = [&](CLI::App* sub) {
    add_family_flags(sub, a);
    sub->add_option("--morphism-file", a.morphism_file, "Morphism JSON");
    sub->add_option("--example", a.example, "Built-in example: sl2");
    sub->add_option("--numerator", a.numerator, "Terms 'e1,e2:coef;...' ('|' splits bi-variables)");
    sub->add_option("--denominator", a.denominator, "Terms of the denominator");
    sub->add_option("--degree", a.degree, "Random homogeneous pair of this degree")->check(CLI::PositiveNumber);
    sub->add_option("--bidegree", a.bidegree, "Random bi-homogeneous pair: d1 d2")->expected(2);
  };
  auto* mkmor = app.add_subcommand("make-morphism", "Build and serialize a rational morphism");
  morphism_flags(mkmor);
  mkmor->add_option("--seed", a.seed, "Seed for random polynomials")->capture_default_str();
  add_out(mkmor, a);

  auto* vmor = app.add_subcommand("verify-morphism", "Verify harmonicity and horizontal conformality");
  morphism_flags(vmor);
  add_sampling(vmor, a);
  add_out(vmor, a);

  auto* dlz = app.add_subcommand("dualize", "Move a family to the compact dual");
  add_family_flags(dlz, a);
  add_out(dlz, a);

  auto* vdual = app.add_subcommand("verify-dual", "Verify a dual family and the sign flip");
  add_family_flags(vdual, a);
  add_sampling(vdual, a);
  add_out(vdual, a);

  auto* all = app.add_subcommand("run-all", "Run the acceptance suite");
  all->add_option("--seed", a.seed, "Seed")->capture_default_str();
  all->add_option("--max-size", a.max_size, "Largest matrix size for sampled criteria")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();
  add_out(all, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const std::string command = command_echo(argc, argv);
  Emitter emit(a, out, err);
  try {
    if (ids->parsed()) {
      const IdentityReport ir = check_identities(a.n, a.p, a.q);
      VerificationReport r;
      r.subject = "n=" + std::to_string(a.n) + " p=" + std::to_string(a.p) + " q=" + std::to_string(a.q);
      r.provenance = "identities";
      r.tolerance = 1e-14;
      for (const auto& name : ir.names()) {
        r.add_check(name, ir.max_float_deviation(name), 1e-14);
        r.add_check(name + "/exact", static_cast<double>(ir.max_exact_deviation(name)), 0.0);
      }
      return emit.report(r, command, "identities.json");
    }
    if (basis->parsed()) {
      const GroupDescriptor g = parse_group(a.group);
      const SignedBasis b = a.dual ? dual_basis(g) : algebra_basis(g);
      const BasisReport br = verify_basis(a.dual ? dual_descriptor(g) : g);
      Json j;
      j["group"] = (a.dual ? dual_descriptor(g) : g).to_string();
      j["dimension"] = b.size();
      Json els = Json::array();
      for (std::size_t k = 0; k < b.size(); ++k) {
        els.push_back({{"label", b.labels[k]}, {"sign", b.signs[k]}, {"matrix", to_json(b.elements[k])}});
      }
      j["elements"] = std::move(els);
      j["report"] = {{"count", br.count},
                     {"expected_dimension", br.expected_dimension},
                     {"orthonormality_deviation", br.orthonormality_deviation},
                     {"algebra_deviation", br.algebra_deviation},
                     {"sign_deviation", br.sign_deviation},
                     {"pass", br.pass()}};
      if (a.dual) {
        Json rows = Json::array();
        for (const auto& s : metric_sign_diagnostic(g)) {
          rows.push_back({{"label", s.label}, {"structural", s.structural}, {"trace_form", s.trace_form},
                          {"agree", s.agree()}});
        }
        j["sign_diagnostic"] = std::move(rows);
      }
      emit.write(j, "basis_" + slug(j["group"].get<std::string>()) + ".json");
      err << (br.pass() ? "PASS" : "FAIL") << " basis of " << j["group"].get<std::string>() << " (" << b.size()
          << " elements)\n";
      return br.pass() ? kExitPass : kExitFail;
    }
    if (lemma->parsed()) {
      const GroupDescriptor g = a.group.empty() ? default_group_for_lemma(a.lemma) : parse_group(a.group);
      return emit.report(verify_lemma(g, a.lemma, verify_options(a)), command,
                         "lemma_" + slug(a.lemma) + "_" + slug(g.to_string()) + ".json");
    }
    if (mkfam->parsed()) {
      const Family f = family_from_args(a);
      emit.write(to_json(f), "family_" + slug(family_provenance(f)) + ".json");
      return kExitPass;
    }
    if (vfam->parsed()) {
      const Family f = family_from_args(a);
      return emit.report(verify_family(f, verify_options(a)), command,
                         "verify_family_" + slug(family_provenance(f)) + ".json");
    }
    if (mkmor->parsed()) {
      const RationalMorphism m = morphism_from_args(a);
      emit.write(to_json(m), "morphism_" + slug(family_provenance(m.family)) + ".json");
      return kExitPass;
    }
    if (vmor->parsed()) {
      const RationalMorphism m = morphism_from_args(a);
      VerificationReport r = verify_morphism(m, morphism_options(a));
      return emit.report(std::move(r), command, "verify_morphism_" + slug(family_provenance(m.family)) + ".json");
    }
    if (dlz->parsed()) {
      const Family f = dualize(family_from_args(a));
      emit.write(to_json(f), "family_" + slug(family_provenance(f)) + ".json");
      return kExitPass;
    }
    if (vdual->parsed()) {
      Family f = family_from_args(a);
      if (!family_group(f).is_dual()) f = dualize(f);
      return emit.report(verify_dual(f, verify_options(a)), command,
                         "verify_dual_" + slug(family_provenance(f)) + ".json");
    }
    if (all->parsed()) {
      SuiteOptions so;
      so.seed = a.seed;
      so.max_size = a.max_size;
      const auto results = run_suite(so);
      Json j = suite_to_json(results, so);
      j["command"] = command;
      emit.write(j, "run_all.json");
      bool pass = true;
      for (const auto& c : results) {
        pass = pass && c.pass();
        err << (c.pass() ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.title << " (" << c.seconds << " s)\n";
        for (const auto& f : c.failures()) err << "  failed " << f << "\n";
      }
      return pass ? kExitPass : kExitFail;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hmorph::cli
