#include "hmorph/families.hpp"

#include "hmorph/parallel.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace hmorph {

namespace {

void require_length(const ComplexVector& x, int n, const char* what) {
  if (x.size() != n) {
    throw std::invalid_argument(std::string(what) + " must have length " + std::to_string(n) + ", got " +
                                std::to_string(x.size()));
  }
}

void require_nonzero(const ComplexVector& x, const char* what) {
  if (x.size() == 0 || x.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument(std::string(what) + " must be non-zero");
  }
}

// Support must lie in coordinates offset+1 .. offset+size.
void require_support(const ComplexVector& x, int offset, int size, const char* what) {
  for (int k = 0; k < x.size(); ++k) {
    if ((k < offset || k >= offset + size) && x(k) != Complex(0.0, 0.0)) {
      throw std::invalid_argument(std::string(what) + " must be supported on coordinates " +
                                  std::to_string(offset + 1) + ".." + std::to_string(offset + size));
    }
  }
}

ComplexVector unit_vector(int n, int k) {
  ComplexVector e = ComplexVector::Zero(n);
  e(k) = 1.0;
  return e;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.transpose(); }

ScalarField linear(int ambient, std::vector<TraceTerm> terms) {
  return ScalarField::trace_form(std::move(terms), ambient);
}

EigenFamily make_eigen(GroupDescriptor g, std::string prov, std::vector<ScalarField> gens, Complex lambda,
                       Complex mu) {
  for (const auto& f : gens) {
    if (f.kind() == FieldKind::TraceForm && f.ambient_coefficient().cwiseAbs().maxCoeff() == 0.0) {
      throw std::invalid_argument("family generator is the zero field");
    }
  }
  return EigenFamily{std::move(g), std::move(prov), std::move(gens), lambda, mu};
}

double asymmetry(const ComplexMatrix& m) {
  return max_abs(m - m.transpose()) / std::max(1.0, max_abs(m));
}

}  // namespace

const GroupDescriptor& family_group(const Family& f) {
  return std::visit([](const auto& x) -> const GroupDescriptor& { return x.group; }, f);
}

const std::string& family_provenance(const Family& f) {
  return std::visit([](const auto& x) -> const std::string& { return x.provenance; }, f);
}

std::vector<ScalarField> family_generators(const Family& f) {
  if (const auto* e = std::get_if<EigenFamily>(&f)) return e->generators;
  const auto& b = std::get<BiEigenFamily>(f);
  auto out = b.first.generators;
  out.insert(out.end(), b.second.generators.begin(), b.second.generators.end());
  return out;
}

std::vector<ComplexVector> max_isotropic_subspace(int n) {
  if (n < 2) throw std::invalid_argument("max_isotropic_subspace: C^n has no isotropic vectors for n < 2");
  std::vector<ComplexVector> out;
  for (int k = 0; k + 1 < n; k += 2) {
    ComplexVector v = ComplexVector::Zero(n);
    v(k) = 1.0;
    v(k + 1) = kI;
    out.push_back(v);
  }
  return out;
}

double isotropy_defect(const std::vector<ComplexVector>& vectors) {
  double d = 0.0;
  for (const auto& a : vectors)
    for (const auto& b : vectors) d = std::max(d, std::abs(bilinear_dot(a, b)));
  return d;
}

ComplexVector default_vector(int n) {
  ComplexVector v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(1.0 + k, 0.5 - 0.25 * k);
  return v;
}

ComplexVector embed(const ComplexVector& x, int n, int offset) {
  if (offset < 0 || offset + x.size() > n) throw std::invalid_argument("embed: vector does not fit");
  ComplexVector out = ComplexVector::Zero(n);
  out.segment(offset, x.size()) = x;
  return out;
}

// ---------------------------------------------------------------------------

EigenFamily family_glr(int n, const std::vector<ComplexVector>& isotropic) {
  const auto g = make_group(GroupFamily::GL_R, n);
  if (isotropic.empty()) throw std::invalid_argument("family_glr: the isotropic subspace is empty");
  for (const auto& v : isotropic) {
    require_length(v, n, "isotropic vector");
    require_nonzero(v, "isotropic vector");
  }
  if (isotropy_defect(isotropic) > kIsotropyTol) {
    throw std::invalid_argument("family_glr: vectors are not totally isotropic");
  }
  std::vector<ScalarField> gens;
  for (int r = 0; r < n; ++r)
    for (const auto& v : isotropic) gens.push_back(linear(n, {{outer(unit_vector(n, r), v), Block::Full}}));
  return make_eigen(g, "4.2", std::move(gens), 1.0, 0.0);
}

EigenFamily family_ustar(int n, const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& pairs,
                         std::string provenance) {
  const auto g = make_group(GroupFamily::UStar, n);
  if (pairs.empty()) throw std::invalid_argument("family_ustar: M must be non-empty");
  for (const auto& [a, b] : pairs) {
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
      throw std::invalid_argument("family_ustar: coefficient matrices must be n x n");
    }
  }
  for (const auto& [a, b] : pairs) {
    for (const auto& [c, d] : pairs) {
      if (asymmetry(a * b.transpose()) > 1e-12 || asymmetry(a * d.transpose() - b * c.transpose()) > 1e-12 ||
          asymmetry(c * d.transpose()) > 1e-12) {
        throw std::invalid_argument("family_ustar: AB^t, AD^t - BC^t and CD^t must be symmetric");
      }
    }
  }
  std::vector<ScalarField> gens;
  for (const auto& [a, b] : pairs) gens.push_back(linear(2 * n, {{a, Block::TopLeft}, {b, Block::TopRight}}));
  return make_eigen(g, std::move(provenance), std::move(gens), -1.0, 0.0);
}

EigenFamily family_ustar_xi(int n, Complex xi) {
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) pairs.emplace_back(unit_matrix(n, i, j), xi * unit_matrix(n, i, j));
  return family_ustar(n, pairs, "5.3");
}

EigenFamily family_ustar_p(int n, const ComplexVector& p) {
  require_length(p, n, "p");
  require_nonzero(p, "p");
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) pairs.emplace_back(outer(p, unit_vector(n, k)), zero);
  for (int k = 0; k < n; ++k) pairs.emplace_back(zero, outer(p, unit_vector(n, k)));
  return family_ustar(n, pairs, "5.4");
}

namespace {

// trace(a^t v (x + iy)^t + b^t v (z + iw)^t)
ScalarField spr_field(int n, const ComplexVector& a, const ComplexVector& b, const ComplexVector& v) {
  const ComplexMatrix av = outer(a, v);
  const ComplexMatrix bv = outer(b, v);
  return linear(2 * n, {{av, Block::TopLeft}, {kI * av, Block::TopRight}, {bv, Block::BottomLeft},
                        {kI * bv, Block::BottomRight}});
}

}  // namespace

EigenFamily family_spr_v(int n, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::SpR, n);
  require_length(v, n, "v");
  require_nonzero(v, "v");
  const ComplexVector zero = ComplexVector::Zero(n);
  std::vector<ScalarField> gens;
  for (int k = 0; k < n; ++k) gens.push_back(spr_field(n, unit_vector(n, k), zero, v));
  for (int k = 0; k < n; ++k) gens.push_back(spr_field(n, zero, unit_vector(n, k), v));
  return make_eigen(g, "6.2", std::move(gens), 0.5, -0.5);
}

EigenFamily family_spr_ab(int n, const ComplexVector& a, const ComplexVector& b) {
  const auto g = make_group(GroupFamily::SpR, n);
  require_length(a, n, "a");
  require_length(b, n, "b");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  std::vector<ScalarField> gens;
  for (int k = 0; k < n; ++k) gens.push_back(spr_field(n, a, b, unit_vector(n, k)));
  return make_eigen(g, "6.3", std::move(gens), 0.5, -0.5);
}

BiEigenFamily bifamily_sostar(int n, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::SOStar, n);
  require_length(v, n, "v");
  require_nonzero(v, "v");
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < n; ++k) e1.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopLeft}}));
  for (int k = 0; k < n; ++k) e2.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopRight}}));
  return BiEigenFamily{g, "8.2", make_eigen(g, "8.2", std::move(e1), -0.5, -0.5),
                       make_eigen(g, "8.2", std::move(e2), -0.5, -0.5), Complex(0.5, 0.0)};
}

BiEigenFamily family_sostar_a(int n, const ComplexVector& a) {
  const auto g = make_group(GroupFamily::SOStar, n);
  require_length(a, n, "a");
  require_nonzero(a, "a");
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < n; ++k) e1.push_back(linear(2 * n, {{outer(unit_vector(n, k), a), Block::TopLeft}}));
  for (int k = 0; k < n; ++k) e2.push_back(linear(2 * n, {{outer(unit_vector(n, k), a), Block::TopRight}}));
  return BiEigenFamily{g, "8.3", make_eigen(g, "8.3", std::move(e1), -0.5, -0.5),
                       make_eigen(g, "8.3", std::move(e2), -0.5, -0.5), std::nullopt};
}

BiEigenFamily bifamily_upq(int p, int q, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::U_pq, p, q);
  const int n = p + q;
  require_length(v, n, "v");
  require_nonzero(v, "v");
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < p; ++k) e1.push_back(linear(n, {{outer(v, unit_vector(n, k)), Block::Full}}));
  for (int k = p; k < n; ++k) e2.push_back(linear(n, {{outer(v, unit_vector(n, k)), Block::Full}}));
  return BiEigenFamily{g, "10.2", make_eigen(g, "10.2", std::move(e1), double(q - p), -1.0),
                       make_eigen(g, "10.2", std::move(e2), double(p - q), -1.0), Complex(1.0, 0.0)};
}

BiEigenFamily family_upq_uv(int p, int q, const ComplexVector& u, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::U_pq, p, q);
  const int n = p + q;
  require_length(u, n, "u");
  require_length(v, n, "v");
  require_nonzero(u, "u");
  require_nonzero(v, "v");
  require_support(u, 0, p, "u");
  require_support(v, p, q, "v");
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < n; ++k) e1.push_back(linear(n, {{outer(unit_vector(n, k), u), Block::Full}}));
  for (int k = 0; k < n; ++k) e2.push_back(linear(n, {{outer(unit_vector(n, k), v), Block::Full}}));
  return BiEigenFamily{g, "10.3", make_eigen(g, "10.3", std::move(e1), double(q - p), -1.0),
                       make_eigen(g, "10.3", std::move(e2), double(p - q), -1.0), std::nullopt};
}

BiEigenFamily bifamily_sopq(int p, int q, const ComplexVector& u) {
  if (p < 2 || q < 2) throw std::invalid_argument("bifamily_sopq: needs p >= 2 and q >= 2");
  const int n = p + q;
  std::vector<ComplexVector> v1, v2;
  for (const auto& x : max_isotropic_subspace(p)) v1.push_back(embed(x, n, 0));
  for (const auto& x : max_isotropic_subspace(q)) v2.push_back(embed(x, n, p));
  return bifamily_sopq(p, q, u, v1, v2);
}

BiEigenFamily bifamily_sopq(int p, int q, const ComplexVector& u, const std::vector<ComplexVector>& v1,
                            const std::vector<ComplexVector>& v2) {
  const auto g = make_group(GroupFamily::SO_pq, p, q);
  const int n = p + q;
  require_length(u, n, "u");
  require_nonzero(u, "u");
  if (v1.empty() || v2.empty()) throw std::invalid_argument("bifamily_sopq: isotropic subspaces must be non-empty");
  for (const auto& a : v1) {
    require_length(a, n, "V1 vector");
    require_nonzero(a, "V1 vector");
    require_support(a, 0, p, "V1 vector");
  }
  for (const auto& a : v2) {
    require_length(a, n, "V2 vector");
    require_nonzero(a, "V2 vector");
    require_support(a, p, q, "V2 vector");
  }
  if (isotropy_defect(v1) > kIsotropyTol || isotropy_defect(v2) > kIsotropyTol) {
    throw std::invalid_argument("bifamily_sopq: V1 and V2 must be totally isotropic");
  }
  std::vector<ScalarField> e1, e2;
  for (const auto& a : v1) e1.push_back(linear(n, {{outer(u, a), Block::Full}}));
  for (const auto& a : v2) e2.push_back(linear(n, {{outer(u, a), Block::Full}}));
  const double d = p - q;
  return BiEigenFamily{g, "11.2", make_eigen(g, "11.2", std::move(e1), 0.5 * (1.0 - d), -0.5),
                       make_eigen(g, "11.2", std::move(e2), 0.5 * (1.0 + d), -0.5), Complex(0.5, 0.0)};
}

BiEigenFamily family_sopq_uv(int p, int q, const ComplexVector& u, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::SO_pq, p, q);
  const int n = p + q;
  require_length(u, n, "u");
  require_length(v, n, "v");
  require_nonzero(u, "u");
  require_nonzero(v, "v");
  require_support(u, 0, p, "u");
  require_support(v, p, q, "v");
  if (std::abs(bilinear_dot(u, u)) > kIsotropyTol || std::abs(bilinear_dot(v, v)) > kIsotropyTol) {
    throw std::invalid_argument("family_sopq_uv: u and v must be isotropic");
  }
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < n; ++k) e1.push_back(linear(n, {{outer(unit_vector(n, k), u), Block::Full}}));
  for (int k = 0; k < n; ++k) e2.push_back(linear(n, {{outer(unit_vector(n, k), v), Block::Full}}));
  const double d = p - q;
  return BiEigenFamily{g, "11.3", make_eigen(g, "11.3", std::move(e1), 0.5 * (1.0 - d), -0.5),
                       make_eigen(g, "11.3", std::move(e2), 0.5 * (1.0 + d), -0.5), std::nullopt};
}

BiEigenFamily bifamily_sppq(int p, int q, const ComplexVector& v) {
  const auto g = make_group(GroupFamily::Sp_pq, p, q);
  const int n = p + q;
  require_length(v, n, "v");
  require_nonzero(v, "v");
  std::vector<ScalarField> e1, e2;
  for (int k = 0; k < p; ++k) e1.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopLeft}}));
  for (int k = 0; k < p; ++k) e1.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopRight}}));
  for (int k = p; k < n; ++k) e2.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopLeft}}));
  for (int k = p; k < n; ++k) e2.push_back(linear(2 * n, {{outer(v, unit_vector(n, k)), Block::TopRight}}));
  const double d = q - p;
  return BiEigenFamily{g, "12.2", make_eigen(g, "12.2", std::move(e1), d - 0.5, -0.5),
                       make_eigen(g, "12.2", std::move(e2), -d - 0.5, -0.5), Complex(0.5, 0.0)};
}

EigenFamily restrict_to_special(const EigenFamily& f) {
  GroupFamily target;
  if (f.group.family == GroupFamily::GL_R) {
    target = GroupFamily::SL_R;
  } else if (f.group.family == GroupFamily::UStar) {
    target = GroupFamily::SUStar;
  } else {
    throw std::invalid_argument("restrict_to_special: only GL(n,R) and U*(2n) families can be restricted");
  }
  for (const auto& g : f.generators) {
    if (g.kind() != FieldKind::TraceForm) {
      throw std::invalid_argument("restrict_to_special: generators must be linear in the matrix entries");
    }
  }
  EigenFamily out = f;
  out.group = make_group(target, f.group.n);
  const double inv = 1.0 / f.group.matrix_size();
  out.lambda -= inv;
  out.mu -= inv;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SelectorInfo {
  const char* name;
  GroupFamily family;
  const char* default_group;
};

constexpr SelectorInfo kSelectors[] = {
    {"4.2", GroupFamily::GL_R, "gl_r:3"},     {"4.3", GroupFamily::SL_R, "sl_r:2"},
    {"5.2", GroupFamily::UStar, "u_star:2"},  {"5.3", GroupFamily::UStar, "u_star:2"},
    {"5.4", GroupFamily::UStar, "u_star:2"},  {"6.2", GroupFamily::SpR, "sp_r:2"},
    {"6.3", GroupFamily::SpR, "sp_r:2"},      {"8.2", GroupFamily::SOStar, "so_star:3"},
    {"8.3", GroupFamily::SOStar, "so_star:3"}, {"10.2", GroupFamily::U_pq, "u_pq:2,1"},
    {"10.3", GroupFamily::U_pq, "u_pq:2,1"},  {"11.2", GroupFamily::SO_pq, "so_pq:2,2"},
    {"11.3", GroupFamily::SO_pq, "so_pq:2,2"}, {"12.2", GroupFamily::Sp_pq, "sp_pq:2,1"},
};

const SelectorInfo& selector_info(std::string_view s) {
  for (const auto& e : kSelectors)
    if (s == e.name) return e;
  throw std::invalid_argument("unknown family selector '" + std::string(s) + "'");
}

ComplexVector reversed(const ComplexVector& v) { return v.reverse(); }

}  // namespace

std::vector<std::string> family_selectors() {
  std::vector<std::string> out;
  for (const auto& e : kSelectors) out.emplace_back(e.name);
  return out;
}

GroupDescriptor default_group_for(std::string_view selector) {
  return GroupDescriptor::parse(selector_info(selector).default_group);
}

Family make_family(const GroupDescriptor& group, std::string_view selector, const FamilyParams& params) {
  const auto& info = selector_info(selector);
  if (group.is_dual()) throw std::invalid_argument("make_family: build on the non-compact group, then dualize");
  const bool special = (info.family == GroupFamily::GL_R && group.family == GroupFamily::SL_R) ||
                       (info.family == GroupFamily::UStar && group.family == GroupFamily::SUStar);
  const bool general = info.family == GroupFamily::SL_R && group.family == GroupFamily::GL_R;
  if (group.family != info.family && !special && !general) {
    throw std::invalid_argument("selector " + std::string(selector) + " is not defined on " + group.to_string());
  }
  const int n = group.n;
  const int p = group.p;
  const int q = group.q;
  auto pick = [](const std::optional<ComplexVector>& x, ComplexVector fallback) { return x ? *x : fallback; };
  auto finish = [&](EigenFamily f) -> Family {
    if (special) {
      auto r = restrict_to_special(f);
      r.provenance = std::string(selector);
      return r;
    }
    return f;
  };

  if (selector == "4.2") {
    return finish(family_glr(n, params.isotropic.empty() ? max_isotropic_subspace(n) : params.isotropic));
  }
  if (selector == "4.3") {
    if (n != 2) throw std::invalid_argument("selector 4.3 lives on sl_r:2");
    ComplexVector v(2);
    v << 1.0, kI;
    auto f = family_glr(2, {v});
    if (group.family == GroupFamily::SL_R) {
      f = restrict_to_special(f);
    }
    f.provenance = "4.3";
    return f;
  }
  if (selector == "5.2" || selector == "5.3") {
    auto f = family_ustar_xi(n, params.xi.value_or(Complex(1.0, -0.5)));
    f.provenance = std::string(selector);
    return finish(f);
  }
  if (selector == "5.4") return finish(family_ustar_p(n, pick(params.v, default_vector(n))));
  if (selector == "6.2") return family_spr_v(n, pick(params.v, default_vector(n)));
  if (selector == "6.3") {
    return family_spr_ab(n, pick(params.a, default_vector(n)), pick(params.b, reversed(default_vector(n))));
  }
  if (selector == "8.2") return bifamily_sostar(n, pick(params.v, default_vector(n)));
  if (selector == "8.3") return family_sostar_a(n, pick(params.a, default_vector(n)));
  if (selector == "10.2") return bifamily_upq(p, q, pick(params.v, default_vector(n)));
  if (selector == "10.3") {
    return family_upq_uv(p, q, pick(params.u, embed(default_vector(p), n, 0)),
                         pick(params.v, embed(default_vector(q), n, p)));
  }
  if (selector == "11.2") return bifamily_sopq(p, q, pick(params.u, default_vector(n)));
  if (selector == "11.3") {
    if (!params.u && p < 2) throw std::invalid_argument("selector 11.3 needs p >= 2 for a default isotropic u");
    if (!params.v && q < 2) throw std::invalid_argument("selector 11.3 needs q >= 2 for a default isotropic v");
    return family_sopq_uv(p, q, params.u ? *params.u : embed(max_isotropic_subspace(p).front(), n, 0),
                          params.v ? *params.v : embed(max_isotropic_subspace(q).front(), n, p));
  }
  return bifamily_sppq(p, q, pick(params.v, default_vector(n)));
}

// ---------------------------------------------------------------------------

namespace {

struct PointData {
  double membership = 0.0;
  std::vector<Complex> values;
  std::vector<Complex> taus;
  std::vector<Complex> kappas;  // row-major upper triangle, a <= b
};

std::size_t pair_index(std::size_t a, std::size_t b, std::size_t m) { return a * m - a * (a - 1) / 2 + (b - a); }

}  // namespace

VerificationReport verify_family(const Family& f, const VerifyOptions& opt) {
  if (opt.samples < 1) throw std::invalid_argument("verify_family: samples must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const GroupDescriptor& group = family_group(f);
  const SignedBasis basis = metric_basis(group);

  // Parts: (generators, lambda, mu, label)
  struct Part {
    const EigenFamily* fam;
    std::string suffix;
  };
  std::vector<Part> parts;
  std::optional<Complex> mu_cross;
  bool bi = false;
  if (const auto* e = std::get_if<EigenFamily>(&f)) {
    parts.push_back({e, ""});
  } else {
    const auto& b = std::get<BiEigenFamily>(f);
    parts.push_back({&b.first, "-1"});
    parts.push_back({&b.second, "-2"});
    mu_cross = b.mu_cross;
    bi = true;
  }
  std::vector<ScalarField> gens;
  std::vector<int> part_of;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (const auto& g : parts[k].fam->generators) {
      if (g.ambient_size() != group.matrix_size()) {
        throw std::invalid_argument("verify_family: generator ambient size does not match the group");
      }
      gens.push_back(g);
      part_of.push_back(static_cast<int>(k));
    }
  }
  const std::size_t m = gens.size();
  std::vector<FieldProgram> programs;
  programs.reserve(m);
  for (const auto& g : gens) programs.emplace_back(g);

  std::vector<PointData> data(static_cast<std::size_t>(opt.samples));
  parallel_for(opt.samples, [&](int i) {
    const GroupPoint pt = sample_point(group, derive_seed(opt.seed, static_cast<std::uint64_t>(i)), opt.scale);
    PointData& d = data[static_cast<std::size_t>(i)];
    d.membership = membership_residual(pt);
    std::vector<ComplexMatrix> gz, gzz;
    for (const auto& z : basis.elements) {
      gz.push_back(pt.matrix * z);
      gzz.push_back(gz.back() * z);
    }
    std::vector<std::vector<Jet2>> jets(m);
    for (std::size_t a = 0; a < m; ++a) {
      d.values.push_back(programs[a].value(pt.matrix, opt.delta));
      for (std::size_t k = 0; k < basis.size(); ++k) jets[a].push_back(programs[a].jet(pt.matrix, gz[k], gzz[k], opt.delta));
      d.taus.push_back(tension_from(jets[a], basis.signs));
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) d.kappas.push_back(kappa_from(jets[a], jets[b], basis.signs));
  });

  VerificationReport rep;
  rep.subject = group.to_string();
  rep.provenance = family_provenance(f);
  rep.samples = opt.samples;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;

  double membership = 0.0;
  for (const auto& d : data) membership = std::max(membership, d.membership);
  rep.add_check("membership", membership, kMembershipTol);

  std::vector<double> tau_res(parts.size(), 0.0), kappa_res(parts.size(), 0.0);
  double cross_res = 0.0;
  std::vector<std::vector<Complex>> tau_l(parts.size()), tau_r(parts.size()), k_l(parts.size()), k_r(parts.size());
  std::vector<Complex> x_l, x_r;
  auto bump = [](double& acc, double r) {
    if (!(r <= acc)) acc = r;
  };
  for (const auto& d : data) {
    for (std::size_t a = 0; a < m; ++a) {
      const auto* fam = parts[part_of[a]].fam;
      bump(tau_res[part_of[a]], relative_residual(d.taus[a], fam->lambda * d.values[a]));
      tau_l[part_of[a]].push_back(d.taus[a]);
      tau_r[part_of[a]].push_back(d.values[a]);
      for (std::size_t b = a; b < m; ++b) {
        const Complex k = d.kappas[pair_index(a, b, m)];
        const Complex prod = d.values[a] * d.values[b];
        if (part_of[a] == part_of[b]) {
          bump(kappa_res[part_of[a]], relative_residual(k, fam->mu * prod));
          k_l[part_of[a]].push_back(k);
          k_r[part_of[a]].push_back(prod);
        } else {
          if (mu_cross) bump(cross_res, relative_residual(k, *mu_cross * prod));
          x_l.push_back(k);
          x_r.push_back(prod);
        }
      }
    }
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& sfx = parts[k].suffix;
    rep.add_check("tau" + sfx, tau_res[k], opt.tol);
    rep.add_check("kappa" + sfx, kappa_res[k], opt.tol);
    auto lam = fit_constant("lambda" + sfx, tau_l[k], tau_r[k], parts[k].fam->lambda);
    auto mu = fit_constant("mu" + sfx, k_l[k], k_r[k], parts[k].fam->mu);
    rep.add_check("fit-lambda" + sfx, std::abs(lam.value - parts[k].fam->lambda), opt.tol);
    rep.add_check("fit-mu" + sfx, std::abs(mu.value - parts[k].fam->mu), opt.tol);
    rep.constants.push_back(std::move(lam));
    rep.constants.push_back(std::move(mu));
  }
  if (bi) {
    auto x = fit_constant("mu-cross", x_l, x_r, mu_cross);
    if (mu_cross) {
      rep.add_check("kappa-cross", cross_res, opt.tol);
      rep.add_check("fit-mu-cross", std::abs(x.value - *mu_cross), opt.tol);
    } else {
      std::ostringstream os;
      os.precision(3);
      os << "cross constant " << (x.spread <= opt.tol ? "exists" : "does not exist")
         << " (least-squares value " << x.value.real() << (x.value.imag() < 0 ? "-" : "+")
         << std::abs(x.value.imag()) << "i, spread " << x.spread << ")";
      rep.notes.push_back(os.str());
    }
    rep.constants.push_back(std::move(x));
  }
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hmorph
