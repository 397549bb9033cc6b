#include "hmorph/morphisms.hpp"

#include "hmorph/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

namespace hmorph {

bool MultiPoly::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second == Complex(0.0, 0.0); });
}

void MultiPoly::add(const std::vector<int>& exponents, Complex c) {
  if (static_cast<int>(exponents.size()) != num_vars()) {
    throw std::invalid_argument("MultiPoly::add: exponent vector has " + std::to_string(exponents.size()) +
                                " entries, polynomial has " + std::to_string(num_vars()) + " variables");
  }
  for (int e : exponents)
    if (e < 0) throw std::invalid_argument("MultiPoly::add: negative exponent");
  terms[exponents] += c;
}

std::pair<int, int> MultiPoly::bidegree() const {
  std::optional<std::pair<int, int>> d;
  for (const auto& [e, c] : terms) {
    if (c == Complex(0.0, 0.0)) continue;
    const int d1 = std::accumulate(e.begin(), e.begin() + vars1, 0);
    const int d2 = std::accumulate(e.begin() + vars1, e.end(), 0);
    if (d && (d->first != d1 || d->second != d2)) {
      throw std::invalid_argument("polynomial is not bi-homogeneous");
    }
    d = std::make_pair(d1, d2);
  }
  if (!d) throw std::invalid_argument("polynomial is zero");
  return *d;
}

int MultiPoly::degree() const {
  std::optional<int> d;
  for (const auto& [e, c] : terms) {
    if (c == Complex(0.0, 0.0)) continue;
    const int total = std::accumulate(e.begin(), e.end(), 0);
    if (d && *d != total) throw std::invalid_argument("polynomial is not homogeneous");
    d = total;
  }
  if (!d) throw std::invalid_argument("polynomial is zero");
  return *d;
}

namespace {

void compositions(int vars, int degree, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == vars - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    compositions(vars, degree - e, cur, pos + 1, out);
  }
}

std::vector<std::vector<int>> all_compositions(int vars, int degree) {
  std::vector<std::vector<int>> out;
  if (vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(vars, 0);
  compositions(vars, degree, cur, 0, out);
  return out;
}

Complex random_coefficient(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

MultiPoly pick_terms(MultiPoly poly, std::vector<std::vector<int>> monomials, std::mt19937_64& rng, int max_terms) {
  if (monomials.empty()) throw std::invalid_argument("no monomials of the requested degree");
  for (std::size_t k = monomials.size(); k > 1; --k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::swap(monomials[k - 1], monomials[pick(rng)]);
  }
  const std::size_t count = std::min<std::size_t>(monomials.size(), static_cast<std::size_t>(std::max(1, max_terms)));
  for (std::size_t k = 0; k < count; ++k) poly.add(monomials[k], random_coefficient(rng));
  return poly;
}

}  // namespace

MultiPoly random_homogeneous(int vars, int degree, std::mt19937_64& rng, int max_terms) {
  if (vars < 1 || degree < 1) throw std::invalid_argument("random_homogeneous: needs vars >= 1 and degree >= 1");
  MultiPoly p;
  p.vars1 = vars;
  return pick_terms(std::move(p), all_compositions(vars, degree), rng, max_terms);
}

MultiPoly random_bihomogeneous(int vars1, int vars2, int d1, int d2, std::mt19937_64& rng, int max_terms) {
  if (vars1 < 1 || vars2 < 1 || d1 < 0 || d2 < 0 || d1 + d2 < 1) {
    throw std::invalid_argument("random_bihomogeneous: invalid variable counts or degrees");
  }
  MultiPoly p;
  p.vars1 = vars1;
  p.vars2 = vars2;
  std::vector<std::vector<int>> monomials;
  for (const auto& a : all_compositions(vars1, d1)) {
    for (const auto& b : all_compositions(vars2, d2)) {
      auto e = a;
      e.insert(e.end(), b.begin(), b.end());
      monomials.push_back(std::move(e));
    }
  }
  return pick_terms(std::move(p), std::move(monomials), rng, max_terms);
}

namespace {

// Variables of a polynomial over a family: one block for an eigenfamily,
// two blocks for a bi-eigenfamily.
std::pair<std::vector<ScalarField>, std::vector<ScalarField>> variable_blocks(const Family& f) {
  if (const auto* e = std::get_if<EigenFamily>(&f)) return {e->generators, {}};
  const auto& b = std::get<BiEigenFamily>(f);
  return {b.first.generators, b.second.generators};
}

}  // namespace

ScalarField compose(const Family& f, const MultiPoly& poly) {
  const auto [first, second] = variable_blocks(f);
  if (poly.vars1 != static_cast<int>(first.size()) || poly.vars2 != static_cast<int>(second.size())) {
    throw std::invalid_argument("compose: polynomial has (" + std::to_string(poly.vars1) + "," +
                                std::to_string(poly.vars2) + ") variables, family has (" +
                                std::to_string(first.size()) + "," + std::to_string(second.size()) + ")");
  }
  std::vector<ScalarField> vars = first;
  vars.insert(vars.end(), second.begin(), second.end());
  std::vector<ScalarField> terms;
  for (const auto& [e, c] : poly.terms) {
    if (c == Complex(0.0, 0.0)) continue;
    std::vector<ScalarField> factors;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int r = 0; r < e[k]; ++r) factors.push_back(vars[k]);
    ScalarField mono = ScalarField::product(std::move(factors));
    terms.push_back(c == Complex(1.0, 0.0) ? mono : ScalarField::scale(c, mono));
  }
  return ScalarField::sum(std::move(terms));
}

namespace {

bool independent(const MultiPoly& p, const MultiPoly& q) {
  // Gram determinant of the coefficient vectors over the union of monomials.
  double pp = 0.0, qq = 0.0;
  Complex pq{0.0, 0.0};
  for (const auto& [e, c] : p.terms) {
    pp += std::norm(c);
    auto it = q.terms.find(e);
    if (it != q.terms.end()) pq += std::conj(c) * it->second;
  }
  for (const auto& [e, c] : q.terms) qq += std::norm(c);
  return pp * qq - std::norm(pq) > 1e-12 * pp * qq;
}

}  // namespace

RationalMorphism build_morphism(const Family& f, const MultiPoly& numerator, const MultiPoly& denominator) {
  if (denominator.is_zero()) throw std::invalid_argument("build_morphism: denominator is zero");
  if (numerator.is_zero()) throw std::invalid_argument("build_morphism: numerator is zero");
  if (const auto* b = std::get_if<BiEigenFamily>(&f); b && !b->mu_cross) {
    throw std::invalid_argument("build_morphism: the two parts have no cross constant; use one part alone");
  }
  if (numerator.vars1 != denominator.vars1 || numerator.vars2 != denominator.vars2) {
    throw std::invalid_argument("build_morphism: numerator and denominator use different variables");
  }
  if (std::holds_alternative<EigenFamily>(f)) {
    const int dp = numerator.degree();
    const int dq = denominator.degree();
    if (dp != dq) throw std::invalid_argument("build_morphism: degrees differ");
    if (dp < 1) throw std::invalid_argument("build_morphism: degree must be positive");
  } else {
    const auto dp = numerator.bidegree();
    const auto dq = denominator.bidegree();
    if (dp != dq) throw std::invalid_argument("build_morphism: bi-degrees differ");
    if (dp.first + dp.second < 1) throw std::invalid_argument("build_morphism: bi-degree must be positive");
  }
  if (!independent(numerator, denominator)) {
    throw std::invalid_argument("build_morphism: numerator and denominator are linearly dependent");
  }
  RationalMorphism m{f, numerator, denominator, compose(f, numerator), compose(f, denominator), {}};
  m.field = ScalarField::quotient(m.numerator_field, m.denominator_field);
  return m;
}

QuotientTauKappa quotient_tau_kappa(const ScalarField& numerator, const ScalarField& denominator,
                                    const GroupPoint& p, const SignedBasis& basis, double guard) {
  const auto jp = basis_jets(numerator, p, basis, guard);
  const auto jq = basis_jets(denominator, p, basis, guard);
  const Complex pv = evaluate(numerator, p.matrix, guard);
  const Complex qv = evaluate(denominator, p.matrix, guard);
  if (!(std::abs(qv) >= guard)) throw PoleError("quotient_tau_kappa: |Q| is below the pole guard");
  const Complex tp = tension_from(jp, basis.signs);
  const Complex tq = tension_from(jq, basis.signs);
  const Complex kpp = kappa_from(jp, jp, basis.signs);
  const Complex kpq = kappa_from(jp, jq, basis.signs);
  const Complex kqq = kappa_from(jq, jq, basis.signs);

  QuotientTauKappa r;
  const Complex q2 = qv * qv;
  r.tau = (q2 * tp - 2.0 * qv * kpq + 2.0 * pv * kqq - pv * qv * tq) / (q2 * qv);
  r.kappa = (q2 * kpp - 2.0 * pv * qv * kpq + pv * pv * kqq) / (q2 * q2);
  r.triple[0] = q2 * kpp;
  r.triple[1] = pv * qv * kpq;
  r.triple[2] = pv * pv * kqq;
  r.value = pv / qv;
  r.triple_scale = std::max({std::norm(qv) * kappa_scale(jp, jp), std::abs(pv * qv) * kappa_scale(jp, jq),
                             std::norm(pv) * kappa_scale(jq, jq)});

  const auto jphi = basis_jets(ScalarField::quotient(numerator, denominator), p, basis, guard);
  r.tau_direct = tension_from(jphi, basis.signs);
  r.kappa_direct = kappa_from(jphi, jphi, basis.signs);
  r.tau_scale = tension_scale(jphi);
  r.kappa_scale = kappa_scale(jphi, jphi);
  return r;
}

QuotientTauKappa quotient_tau_kappa(const RationalMorphism& m, const GroupPoint& p, const SignedBasis& basis,
                                    double guard) {
  return quotient_tau_kappa(m.numerator_field, m.denominator_field, p, basis, guard);
}

double triple_equality_defect(const QuotientTauKappa& r) {
  return std::max(std::abs(r.triple[0] - r.triple[1]), std::abs(r.triple[1] - r.triple[2])) /
         std::max(1.0, r.triple_scale);
}

namespace {

struct Sampled {
  std::vector<GroupPoint> points;
  int attempts = 0;
};

// Walks the seed stream until `want` points clear the pole guard or the
// attempt budget is spent.
Sampled sample_off_poles(const GroupDescriptor& group, const ScalarField& denominator, int want,
                         std::uint64_t seed, double scale, double delta, int budget) {
  Sampled s;
  const FieldProgram den(denominator);
  while (static_cast<int>(s.points.size()) < want && s.attempts < budget) {
    GroupPoint pt = sample_point(group, derive_seed(seed, static_cast<std::uint64_t>(s.attempts)), scale);
    ++s.attempts;
    if (std::abs(den.value(pt.matrix)) > delta) s.points.push_back(std::move(pt));
  }
  return s;
}

}  // namespace

VerificationReport verify_quotient(const GroupDescriptor& group, const ScalarField& numerator,
                                   const ScalarField& denominator, const MorphismOptions& opt) {
  if (opt.samples < 1) throw std::invalid_argument("verify_quotient: samples must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const SignedBasis basis = metric_basis(group);
  const auto sampled = sample_off_poles(group, denominator, opt.samples, opt.seed, opt.scale, opt.delta,
                                        opt.samples * std::max(1, opt.max_attempt_factor));
  const int good = static_cast<int>(sampled.points.size());
  std::vector<QuotientTauKappa> res(static_cast<std::size_t>(good));
  parallel_for(good, [&](int i) {
    res[static_cast<std::size_t>(i)] =
        quotient_tau_kappa(numerator, denominator, sampled.points[static_cast<std::size_t>(i)], basis, opt.delta);
  });

  VerificationReport rep;
  rep.subject = group.to_string();
  rep.samples = good;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;
  rep.resampled = sampled.attempts - good;
  rep.add_check("points-shortfall", static_cast<double>(opt.samples - good), 0.0);
  if (good < opt.samples) {
    rep.notes.push_back("only " + std::to_string(good) + " of " + std::to_string(opt.samples) +
                        " points cleared the pole guard");
  }

  double tau = 0.0, kap = 0.0, dual = 0.0, triple = 0.0, membership = 0.0;
  double tau_s = 0.0, kap_s = 0.0, dual_s = 0.0;
  auto bump = [](double& acc, double r) {
    if (!(r <= acc)) acc = r;
  };
  for (int i = 0; i < good; ++i) {
    const auto& r = res[static_cast<std::size_t>(i)];
    bump(membership, membership_residual(sampled.points[static_cast<std::size_t>(i)]));
    bump(tau, std::abs(r.tau_direct));
    bump(kap, std::abs(r.kappa_direct));
    bump(dual, relative_residual(r.tau, r.tau_direct));
    bump(dual, relative_residual(r.kappa, r.kappa_direct));
    bump(triple, triple_equality_defect(r));
    bump(tau_s, scaled_residual(r.tau_direct, 0.0, r.tau_scale));
    bump(kap_s, scaled_residual(r.kappa_direct, 0.0, r.kappa_scale));
    bump(dual_s, scaled_residual(r.tau, r.tau_direct, r.tau_scale));
    bump(dual_s, scaled_residual(r.kappa, r.kappa_direct, r.kappa_scale));
  }
  double spread = 0.0;
  for (int i = 1; i < good; ++i) spread = std::max(spread, std::abs(res[i].value - res[0].value));

  rep.add_check("membership", membership, kMembershipTol);
  rep.add_check("tau", tau, opt.tol);
  rep.add_check("kappa", kap, opt.tol);
  rep.add_check("dual-path", dual, kDualPathTol);
  rep.add_check("triple-equality", triple, opt.tol);
  rep.add_check("tau-scaled", tau_s, kScaledTol);
  rep.add_check("kappa-scaled", kap_s, kScaledTol);
  rep.add_check("dual-path-scaled", dual_s, kScaledTol);
  // 0 when the quotient takes at least two distinct values, 1 otherwise.
  rep.add_check("non-constant", spread > kNonConstantTol ? 0.0 : 1.0, 0.0);
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport verify_morphism(const RationalMorphism& m, const MorphismOptions& opt) {
  auto rep = verify_quotient(family_group(m.family), m.numerator_field, m.denominator_field, opt);
  rep.provenance = family_provenance(m.family);
  return rep;
}

SignCensus image_sign_census(const RationalMorphism& m, int samples, std::uint64_t seed, double scale,
                             double delta) {
  SignCensus c;
  const GroupDescriptor& group = family_group(m.family);
  const FieldProgram prog(m.field);
  for (int i = 0; i < samples; ++i) {
    const auto pt = sample_point(group, derive_seed(seed, static_cast<std::uint64_t>(i)), scale);
    try {
      const double im = prog.value(pt.matrix, delta).imag();
      if (im > 0.0) {
        ++c.positive;
      } else if (im < 0.0) {
        ++c.negative;
      } else {
        ++c.zero;
      }
    } catch (const PoleError&) {
      ++c.skipped;
    }
  }
  return c;
}

namespace {

struct PowerPart {
  std::vector<ScalarField> fields;
  Complex lambda;
  Complex mu;
};

PowerPart power_part(const EigenFamily& f, int k) {
  PowerPart out;
  const int m = static_cast<int>(f.generators.size());
  const int count = std::min(m, 3);
  for (int j = 0; j < count; ++j) {
    std::vector<ScalarField> factors;
    for (int t = 0; t < k; ++t) factors.push_back(f.generators[static_cast<std::size_t>((j + t) % m)]);
    out.fields.push_back(ScalarField::product(std::move(factors)));
  }
  const double kk = k;
  out.lambda = kk * f.lambda + kk * (kk - 1.0) * f.mu;
  out.mu = kk * kk * f.mu;
  return out;
}

}  // namespace

VerificationReport verify_appendix_lemmas(const Family& f, int k, int l, const VerifyOptions& opt) {
  if (k < 1 || l < 1) throw std::invalid_argument("verify_appendix_lemmas: powers must be >= 1");
  if (opt.samples < 1) throw std::invalid_argument("verify_appendix_lemmas: samples must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const GroupDescriptor& group = family_group(f);
  const SignedBasis basis = metric_basis(group);

  const EigenFamily* e1;
  const EigenFamily* e2;
  std::optional<Complex> cross;
  if (const auto* e = std::get_if<EigenFamily>(&f)) {
    e1 = e2 = e;
    cross = e->mu;
  } else {
    const auto& b = std::get<BiEigenFamily>(f);
    e1 = &b.first;
    e2 = &b.second;
    cross = b.mu_cross;
  }
  const PowerPart p1 = power_part(*e1, k);
  const PowerPart p2 = power_part(*e2, l);
  const double kl = static_cast<double>(k) * l;

  // Fields in evaluation order: powers of part 1, powers of part 2, then the
  // products Phi_a Psi_b when a cross constant exists.
  std::vector<ScalarField> fields = p1.fields;
  fields.insert(fields.end(), p2.fields.begin(), p2.fields.end());
  const std::size_t n1 = p1.fields.size();
  const std::size_t n2 = p2.fields.size();
  if (cross) {
    for (const auto& a : p1.fields)
      for (const auto& b : p2.fields) fields.push_back(a * b);
  }
  std::vector<FieldProgram> progs;
  for (const auto& fl : fields) progs.emplace_back(fl);

  struct Data {
    std::vector<Complex> values, taus;
    std::vector<std::vector<Jet2>> jets;
  };
  std::vector<Data> data(static_cast<std::size_t>(opt.samples));
  parallel_for(opt.samples, [&](int i) {
    const auto pt = sample_point(group, derive_seed(opt.seed, static_cast<std::uint64_t>(i)), opt.scale);
    Data& d = data[static_cast<std::size_t>(i)];
    std::vector<ComplexMatrix> gz, gzz;
    for (const auto& z : basis.elements) {
      gz.push_back(pt.matrix * z);
      gzz.push_back(gz.back() * z);
    }
    for (const auto& prog : progs) {
      d.values.push_back(prog.value(pt.matrix, opt.delta));
      std::vector<Jet2> js;
      for (std::size_t s = 0; s < basis.size(); ++s) js.push_back(prog.jet(pt.matrix, gz[s], gzz[s], opt.delta));
      d.taus.push_back(tension_from(js, basis.signs));
      d.jets.push_back(std::move(js));
    }
  });

  VerificationReport rep;
  rep.subject = group.to_string();
  rep.provenance = family_provenance(f);
  rep.samples = opt.samples;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;
  // Each law is tracked relative to its right-hand side and, as "-scaled",
  // relative to the size of the summed terms.
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, double>> worst;
  auto observe = [&](const std::string& name, Complex lhs, Complex rhs, double scale) {
    auto [it, fresh] = worst.try_emplace(name, 0.0, 0.0);
    if (fresh) order.push_back(name);
    const double r = relative_residual(lhs, rhs);
    const double s = scaled_residual(lhs, rhs, scale);
    if (!(r <= it->second.first)) it->second.first = r;
    if (!(s <= it->second.second)) it->second.second = s;
  };
  for (const auto& d : data) {
    auto kap = [&](const std::string& name, std::size_t a, std::size_t b, Complex mu) {
      observe(name, kappa_from(d.jets[a], d.jets[b], basis.signs), mu * d.values[a] * d.values[b],
              kappa_scale(d.jets[a], d.jets[b]));
    };
    auto tau = [&](const std::string& name, std::size_t a, Complex lambda) {
      observe(name, d.taus[a], lambda * d.values[a], tension_scale(d.jets[a]));
    };
    for (std::size_t a = 0; a < n1; ++a) {
      tau("power-tau-1", a, p1.lambda);
      for (std::size_t b = a; b < n1; ++b) kap("power-kappa-1", a, b, p1.mu);
    }
    for (std::size_t a = n1; a < n1 + n2; ++a) {
      tau("power-tau-2", a, p2.lambda);
      for (std::size_t b = a; b < n1 + n2; ++b) kap("power-kappa-2", a, b, p2.mu);
    }
    if (!cross) continue;
    const Complex mux = *cross * kl;
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = n1; b < n1 + n2; ++b) kap("cross-power-law", a, b, mux);
    const Complex lam_prod = p1.lambda + 2.0 * mux + p2.lambda;
    const Complex mu_prod = p1.mu + 2.0 * mux + p2.mu;
    const std::size_t base = n1 + n2;
    const std::size_t np = n1 * n2;
    for (std::size_t a = base; a < base + np; ++a) {
      tau("product-tau", a, lam_prod);
      for (std::size_t b = a; b < base + np; ++b) kap("product-kappa", a, b, mu_prod);
    }
  }
  for (const auto& name : order) rep.add_check(name, worst[name].first, opt.tol);
  for (const auto& name : order) rep.add_check(name + "-scaled", worst[name].second, kScaledTol);
  if (!cross) rep.notes.push_back("no cross constant: only the power laws of each part are checked");
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RationalMorphism example_sl2_morphism() {
  const Family f = make_family(make_group(GroupFamily::SL_R, 2), "4.3");
  MultiPoly p, q;
  p.vars1 = q.vars1 = 2;
  p.add({1, 0}, 1.0);
  q.add({0, 1}, 1.0);
  return build_morphism(f, p, q);
}

}  // namespace hmorph
