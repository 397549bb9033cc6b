#include "hmorph/suite.hpp"

#include "hmorph/duality.hpp"
#include "hmorph/lemmas.hpp"

#include <chrono>
#include <map>
#include <sstream>

namespace hmorph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

GroupDescriptor parse(const char* s) { return GroupDescriptor::parse(s); }

// Constants each constructor must reproduce, written out independently of the
// constructors. Plain families use "lambda"/"mu", the others a "-1"/"-2"
// suffix per part and "mu-cross".
std::map<std::string, Complex> expected_table(const std::string& sel, const GroupDescriptor& g) {
  const double p = g.p;
  const double q = g.q;
  if (sel == "4.2") return {{"lambda", 1.0}, {"mu", 0.0}};
  if (sel == "4.3") return {{"lambda", 0.5}, {"mu", -0.5}};
  if (sel == "5.2" || sel == "5.3" || sel == "5.4") return {{"lambda", -1.0}, {"mu", 0.0}};
  if (sel == "6.2" || sel == "6.3") return {{"lambda", 0.5}, {"mu", -0.5}};
  std::map<std::string, Complex> t;
  if (sel == "8.2" || sel == "8.3") {
    t = {{"lambda-1", -0.5}, {"mu-1", -0.5}, {"lambda-2", -0.5}, {"mu-2", -0.5}};
    if (sel == "8.2") t["mu-cross"] = 0.5;
  } else if (sel == "10.2" || sel == "10.3") {
    t = {{"lambda-1", q - p}, {"mu-1", -1.0}, {"lambda-2", p - q}, {"mu-2", -1.0}};
    if (sel == "10.2") t["mu-cross"] = 1.0;
  } else if (sel == "11.2" || sel == "11.3") {
    t = {{"lambda-1", 0.5 * (1.0 - (p - q))}, {"mu-1", -0.5}, {"lambda-2", 0.5 * (1.0 + (p - q))}, {"mu-2", -0.5}};
    if (sel == "11.2") t["mu-cross"] = 0.5;
  } else if (sel == "12.2") {
    t = {{"lambda-1", (q - p) - 0.5}, {"mu-1", -0.5}, {"lambda-2", (p - q) - 0.5}, {"mu-2", -0.5}, {"mu-cross", 0.5}};
  }
  return t;
}

VerifyOptions family_options(const SuiteOptions& opt, double tol) {
  VerifyOptions v;
  v.samples = 20;
  v.seed = opt.seed;
  v.tol = tol;
  return v;
}

// Families a polynomial can be composed over: the family itself, or each
// part of a pair without a cross constant.
std::vector<Family> polynomial_bases(const Family& f) {
  if (const auto* b = std::get_if<BiEigenFamily>(&f); b && !b->mu_cross) {
    EigenFamily first = b->first;
    EigenFamily second = b->second;
    first.provenance += "/first";
    second.provenance += "/second";
    return {first, second};
  }
  return {f};
}

MorphismOptions morphism_options(const SuiteOptions& opt, std::size_t index, int samples, double tol) {
  MorphismOptions m;
  m.samples = samples;
  m.seed = derive_seed(opt.seed, 1000 + index);
  m.tol = tol;
  return m;
}

}  // namespace

// Three random independent (P, Q) pairs per degree or bi-degree for every
// family, drawn deterministically from the seed.
std::vector<LabelledMorphism> constructed_morphisms(std::uint64_t seed) {
  std::vector<LabelledMorphism> out;
  std::uint64_t counter = 0;
  for (const auto& sel : family_selectors()) {
    const Family whole = make_family(morphism_group_for(sel), sel);
    for (const auto& base : polynomial_bases(whole)) {
      const bool bi = std::holds_alternative<BiEigenFamily>(base);
      const auto gens = [&] {
        if (!bi) return std::pair<int, int>{static_cast<int>(family_generators(base).size()), 0};
        const auto& b = std::get<BiEigenFamily>(base);
        return std::pair<int, int>{static_cast<int>(b.first.generators.size()),
                                   static_cast<int>(b.second.generators.size())};
      }();
      const std::vector<std::pair<int, int>> degrees =
          bi ? std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}
             : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {3, 0}};
      for (const auto& [d1, d2] : degrees) {
        for (int trial = 0; trial < 3; ++trial) {
          std::mt19937_64 rng(derive_seed(seed, counter++));
          std::optional<RationalMorphism> m;
          for (int attempt = 0; attempt < 8 && !m; ++attempt) {
            const MultiPoly num = bi ? random_bihomogeneous(gens.first, gens.second, d1, d2, rng)
                                     : random_homogeneous(gens.first, d1, rng);
            const MultiPoly den = bi ? random_bihomogeneous(gens.first, gens.second, d1, d2, rng)
                                     : random_homogeneous(gens.first, d1, rng);
            try {
              m = build_morphism(base, num, den);
            } catch (const std::invalid_argument&) {
            }
          }
          if (!m) throw std::runtime_error("no independent polynomial pair for " + family_provenance(base));
          std::string label = family_provenance(base) + " degree " +
                              (bi ? "(" + std::to_string(d1) + "," + std::to_string(d2) + ")" : std::to_string(d1)) +
                              " #" + std::to_string(trial);
          out.push_back({std::move(label), std::move(*m)});
        }
      }
    }
  }
  return out;
}

bool CriterionResult::pass() const {
  if (reports.empty()) return false;
  for (const auto& r : reports)
    if (!r.pass()) return false;
  return true;
}

double CriterionResult::max_residual() const {
  double m = 0.0;
  for (const auto& r : reports) m = std::max(m, r.max_residual());
  return m;
}

std::vector<std::string> CriterionResult::failures() const {
  std::vector<std::string> out;
  for (const auto& r : reports) {
    const std::string who = r.provenance.empty() ? r.subject : r.provenance + " on " + r.subject;
    for (const auto& c : r.failed_checks()) out.push_back(who + "/" + c);
  }
  return out;
}

std::vector<GroupDescriptor> suite_family_groups(const std::string& sel, int max_size) {
  std::vector<const char*> names;
  if (sel == "4.2") names = {"gl_r:2", "gl_r:3", "gl_r:4"};
  else if (sel == "4.3") names = {"sl_r:2"};
  else if (sel == "5.2" || sel == "5.3" || sel == "5.4") names = {"u_star:2", "u_star:3"};
  else if (sel == "6.2" || sel == "6.3") names = {"sp_r:2", "sp_r:3"};
  else if (sel == "8.2" || sel == "8.3") names = {"so_star:2", "so_star:3"};
  else if (sel == "10.2" || sel == "10.3") names = {"u_pq:2,1", "u_pq:1,2", "u_pq:2,2", "u_pq:3,1"};
  else if (sel == "11.2" || sel == "11.3") names = {"so_pq:2,2", "so_pq:3,2", "so_pq:2,3", "so_pq:4,2"};
  else if (sel == "12.2") names = {"sp_pq:2,1", "sp_pq:1,2", "sp_pq:1,1"};
  else throw std::invalid_argument("unknown family selector '" + sel + "'");
  std::vector<GroupDescriptor> out;
  for (const char* n : names) {
    const auto g = parse(n);
    if (g.matrix_size() <= max_size) out.push_back(g);
  }
  return out;
}

GroupDescriptor morphism_group_for(const std::string& selector) {
  // The default so_pq:2,2 gives each part a single generator, and any two
  // bi-homogeneous polynomials in one variable per part are proportional.
  if (selector == "11.2") return parse("so_pq:4,2");
  return default_group_for(selector);
}

CriterionResult criterion_identities(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{1, "matrix identities", {}, {}, 0.0, 5.0};
  VerificationReport rep;
  rep.subject = "n <= " + std::to_string(opt.max_identity_size);
  rep.provenance = "identities";
  rep.tolerance = 1e-14;
  std::map<std::string, std::pair<double, long long>> worst;
  std::vector<std::string> order;
  for (int n = 2; n <= opt.max_identity_size; ++n) {
    for (int p = 0; p <= n; ++p) {
      const IdentityReport ir = check_identities(n, p, n - p);
      for (const auto& name : ir.names()) {
        if (!worst.count(name)) order.push_back(name);
        auto& w = worst[name];
        w.first = std::max(w.first, ir.max_float_deviation(name));
        w.second = std::max(w.second, ir.max_exact_deviation(name));
      }
    }
  }
  for (const auto& name : order) {
    rep.add_check(name, worst[name].first, 1e-14);
    rep.add_check(name + "/exact", static_cast<double>(worst[name].second), 0.0);
  }
  c.notes.push_back(std::string(identity::kMixed) +
                    " is checked in its displayed form; " + identity::kMixedCorrected +
                    " uses 1/2((-1)^(chi(j)+chi(l)) E_lj + delta_jl I_n)");
  c.reports.push_back(std::move(rep));
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_lemmas(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{2, "lemma battery", {}, {}, 0.0, 60.0};
  const VerifyOptions v = family_options(opt, 1e-9);
  for (const auto& sel : lemma_selectors()) {
    for (const auto& g : lemma_battery_groups(sel, opt.max_size)) c.reports.push_back(verify_lemma(g, sel, v));
  }
  c.notes.push_back("kappa-x-x on so_pq is the displayed form; kappa-x-x-corrected sums x_it x_kt over all t");
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_families(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{3, "family axioms", {}, {}, 0.0, 0.0};
  const VerifyOptions v = family_options(opt, 1e-9);
  for (const auto& sel : family_selectors()) {
    for (const auto& g : suite_family_groups(sel, opt.max_size)) {
      VerificationReport rep = verify_family(make_family(g, sel), v);
      for (const auto& [name, value] : expected_table(sel, g)) {
        const MeasuredConstant* m = rep.find_constant(name);
        rep.add_check("table-" + name, m ? std::abs(m->value - value) : 1.0, 1e-8);
      }
      c.reports.push_back(std::move(rep));
    }
  }
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_morphisms(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{4, "morphism generation", {}, {}, 0.0, 0.0};
  const auto ms = constructed_morphisms(opt.seed);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    VerificationReport rep = verify_morphism(ms[k].morphism, morphism_options(opt, k, 50, 1e-8));
    rep.provenance = ms[k].label;
    // The quotient-formula and triple-equality checks belong to criteria 8
    // and 6.
    std::erase_if(rep.checks, [](const Check& ch) {
      return ch.name.rfind("dual-path", 0) == 0 || ch.name == "triple-equality";
    });
    c.reports.push_back(std::move(rep));
  }
  c.notes.push_back(std::to_string(ms.size()) + " morphisms");
  c.notes.push_back("tau-scaled and kappa-scaled divide by sum_k |Z_k^2 phi| and sum_k |Z_k phi|^2, the size of the "
                    "terms the signed sums cancel");
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_example_sl2(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{5, "SL(2,R) example", {}, {}, 0.0, 0.0};
  const RationalMorphism m = example_sl2_morphism();
  MorphismOptions mo;
  mo.samples = 100;
  mo.seed = opt.seed;
  mo.tol = 1e-10;
  VerificationReport rep = verify_morphism(m, mo);
  // Same seed stream as the verifier, so the census covers its samples.
  const SignCensus s = image_sign_census(m, 100, opt.seed);
  const int majority = std::max(s.positive, s.negative);
  rep.add_check("image-sign", static_cast<double>(s.positive + s.negative + s.zero - majority), 0.0);
  std::ostringstream os;
  os << "Im(phi): " << s.positive << " positive, " << s.negative << " negative, " << s.zero << " zero, " << s.skipped
     << " at poles";
  rep.notes.push_back(os.str());
  c.reports.push_back(std::move(rep));
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_appendix(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{6, "product and quotient laws", {}, {}, 0.0, 0.0};
  const VerifyOptions v = family_options(opt, 1e-8);
  for (const auto& sel : family_selectors()) {
    const Family f = make_family(default_group_for(sel), sel);
    VerificationReport agg;
    agg.subject = family_group(f).to_string();
    agg.provenance = family_provenance(f);
    agg.samples = v.samples;
    agg.seed = v.seed;
    agg.tolerance = v.tol;
    for (int k = 1; k <= 3; ++k) {
      for (int l = 1; l <= 3; ++l) {
        const auto r = verify_appendix_lemmas(f, k, l, v);
        agg.absorb(r, "k=" + std::to_string(k) + ",l=" + std::to_string(l));
        for (const auto& n : r.notes)
          if (agg.notes.empty() || agg.notes.back() != n) agg.notes.push_back(n);
      }
    }
    c.reports.push_back(std::move(agg));
  }

  // Triple equality on every constructed morphism.
  VerificationReport triple;
  triple.subject = "constructed morphisms";
  triple.provenance = "triple-equality";
  triple.tolerance = 1e-8;
  const auto ms = constructed_morphisms(opt.seed);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto r = verify_morphism(ms[k].morphism, morphism_options(opt, k, 50, 1e-8));
    const Check* t = r.find_check("triple-equality");
    triple.raise_check("triple-equality", t ? t->residual : 1.0, 1e-8);
  }
  triple.samples = 50;
  triple.seed = opt.seed;
  c.reports.push_back(std::move(triple));

  // x_11 / x_22 on GL_R(2) is not a morphism and must violate the criterion.
  const GroupDescriptor gl2 = make_group(GroupFamily::GL_R, 2);
  MorphismOptions mo;
  mo.samples = 50;
  mo.seed = opt.seed;
  mo.tol = 1e-8;
  const auto ctrl = verify_quotient(gl2, coordinate_field(gl2, Block::Full, 1, 1),
                                    coordinate_field(gl2, Block::Full, 2, 2), mo);
  VerificationReport neg;
  neg.subject = gl2.to_string();
  neg.provenance = "negative-control x11/x22";
  neg.samples = ctrl.samples;
  neg.seed = ctrl.seed;
  neg.tolerance = 0.0;
  const Check* t = ctrl.find_check("triple-equality");
  const Check* k = ctrl.find_check("kappa");
  neg.add_check("triple-equality-violated", t && !t->pass() ? 0.0 : 1.0, 0.0);
  neg.add_check("kappa-violated", k && !k->pass() ? 0.0 : 1.0, 0.0);
  if (t) neg.notes.push_back("triple-equality defect of the control: " + fmt(t->residual));
  if (k) neg.notes.push_back("max |kappa(phi,phi)| of the control: " + fmt(k->residual));
  c.reports.push_back(std::move(neg));
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_duality(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{7, "compact duals", {}, {}, 0.0, 0.0};
  const VerifyOptions v = family_options(opt, 1e-8);
  for (const auto& sel : family_selectors()) {
    for (const auto& g : suite_family_groups(sel, opt.max_size)) {
      c.reports.push_back(verify_dual(dualize(make_family(g, sel)), v));
    }
  }
  c.seconds = seconds_since(t0);
  return c;
}

CriterionResult criterion_oracles(const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c{8, "oracle consistency", {}, {}, 0.0, 0.0};
  std::uint64_t stream = 0;
  for (const auto& sel : family_selectors()) {
    const Family f = make_family(default_group_for(sel), sel);
    const GroupDescriptor& g = family_group(f);
    const auto gens = family_generators(f);
    const SignedBasis basis = metric_basis(g);
    std::mt19937_64 rng(derive_seed(opt.seed, 5000 + stream++));
    std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    ResidualTracker d1, d2;
    for (int t = 0; t < 50; ++t) {
      ScalarField field = gens[pick_gen(rng)];
      for (int extra = 0; extra < t % 3; ++extra) field = field * gens[pick_gen(rng)];
      const GroupPoint pt = sample_point(g, rng(), kDefaultSampleScale);
      ComplexMatrix z = ComplexMatrix::Zero(g.matrix_size(), g.matrix_size());
      for (const auto& b : basis.elements) z += coef(rng) * b;
      const Jet2 exact = jet_eval(field, pt, z);
      const Jet2 fd = fd_oracle(field, pt, z);
      d1.observe(relative_residual(fd.d1, exact.d1));
      d2.observe(relative_residual(fd.d2, exact.d2));
    }
    VerificationReport rep;
    rep.subject = g.to_string();
    rep.provenance = family_provenance(f);
    rep.samples = 50;
    rep.seed = opt.seed;
    rep.tolerance = 1e-5;
    rep.add_check("fd-first", d1.max(), 1e-5);
    rep.add_check("fd-second", d2.max(), 1e-5);
    c.reports.push_back(std::move(rep));
  }

  VerificationReport quot;
  quot.subject = "constructed morphisms";
  quot.provenance = "quotient formulas";
  quot.samples = 50;
  quot.seed = opt.seed;
  quot.tolerance = kDualPathTol;
  const auto ms = constructed_morphisms(opt.seed);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto r = verify_morphism(ms[k].morphism, morphism_options(opt, k, 50, 1e-8));
    const Check* d = r.find_check("dual-path");
    const Check* ds = r.find_check("dual-path-scaled");
    quot.raise_check("dual-path", d ? d->residual : 1.0, kDualPathTol);
    quot.raise_check("dual-path-scaled", ds ? ds->residual : 1.0, kScaledTol);
  }
  c.reports.push_back(std::move(quot));
  c.seconds = seconds_since(t0);
  return c;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
  return {criterion_identities(opt), criterion_lemmas(opt),     criterion_families(opt), criterion_morphisms(opt),
          criterion_example_sl2(opt), criterion_appendix(opt), criterion_duality(opt),  criterion_oracles(opt)};
}

Json to_json(const CriterionResult& c) {
  Json j;
  j["id"] = c.id;
  j["title"] = c.title;
  j["pass"] = c.pass();
  j["max_residual"] = c.max_residual();
  j["failures"] = c.failures();
  j["notes"] = c.notes;
  Json reps = Json::array();
  for (const auto& r : c.reports) reps.push_back(to_json(r));
  j["reports"] = std::move(reps);
  j["timing"] = {{"seconds", c.seconds}, {"runtime_limit", c.runtime_limit}, {"within_time", c.within_time()}};
  return j;
}

Json suite_to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opt) {
  Json j;
  j["format"] = "hmorph-suite/1";
  j["seed"] = opt.seed;
  j["max_size"] = opt.max_size;
  bool pass = !results.empty();
  double total = 0.0;
  Json crit = Json::array();
  for (const auto& c : results) {
    pass = pass && c.pass();
    total += c.seconds;
    crit.push_back(to_json(c));
  }
  j["pass"] = pass;
  j["criteria"] = std::move(crit);
  j["timing"] = {{"generated_at", utc_timestamp()}, {"seconds", total}};
  return j;
}

}  // namespace hmorph
