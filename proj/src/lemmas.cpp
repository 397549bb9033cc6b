#include "hmorph/lemmas.hpp"

#include "hmorph/parallel.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace hmorph {

namespace {

struct Entry {
  const char* selector;
  GroupFamily family;
  const char* default_group;
};

constexpr Entry kLemmas[] = {
    {"4.1", GroupFamily::GL_R, "gl_r:3"},      {"5.1", GroupFamily::UStar, "u_star:2"},
    {"6.1", GroupFamily::SpR, "sp_r:2"},       {"8.1", GroupFamily::SOStar, "so_star:3"},
    {"10.1", GroupFamily::U_pq, "u_pq:2,1"},   {"11.1", GroupFamily::SO_pq, "so_pq:2,2"},
    {"12.1", GroupFamily::Sp_pq, "sp_pq:2,1"},
};

const Entry& entry(std::string_view selector) {
  for (const auto& e : kLemmas)
    if (selector == e.selector) return e;
  throw std::invalid_argument("unknown lemma selector '" + std::string(selector) + "'");
}

// Block values at one point, addressed with 1-based indices.
struct Values {
  std::map<std::string, ComplexMatrix> blocks;
  IndexSets idx;
  int m = 0;

  Complex operator()(const std::string& b, int i, int j) const { return blocks.at(b)(i - 1, j - 1); }
  double sign(int j) const { return idx.chi(j) ? -1.0 : 1.0; }  // (-1)^chi(j)
  double sign(int j, int l) const { return sign(j) * sign(l); }
  // sum_t a_it b_kt over t in [from, to]
  Complex sum(const std::string& a, const std::string& b, int i, int k, int from, int to) const {
    Complex s{0.0, 0.0};
    for (int t = from; t <= to; ++t) s += (*this)(a, i, t) * (*this)(b, k, t);
    return s;
  }
  Complex sum(const std::string& a, const std::string& b, int i, int k) const { return sum(a, b, i, k, 1, m); }
};

using TauRhs = std::function<Complex(const Values&, int, int)>;
using KappaRhs = std::function<Complex(const Values&, int, int, int, int)>;

struct TauRelation {
  std::string block;
  TauRhs rhs;
};

struct KappaRelation {
  std::string name;
  std::string first;
  std::string second;
  KappaRhs rhs;
};

struct Battery {
  std::vector<std::string> blocks;
  std::vector<TauRelation> taus;
  std::vector<KappaRelation> kappas;
};

double delta(int j, int l) { return j == l ? 1.0 : 0.0; }

KappaRelation kappa_rel(const std::string& a, const std::string& b, KappaRhs rhs, const std::string& suffix = "") {
  return {"kappa-" + a + "-" + b + suffix, a, b, std::move(rhs)};
}

Battery battery_gl() {
  Battery b{{"x"}, {}, {}};
  b.taus.push_back({"x", [](const Values& v, int i, int j) { return v("x", i, j); }});
  b.kappas.push_back(kappa_rel("x", "x", [](const Values& v, int i, int j, int k, int l) {
    return delta(j, l) * v.sum("x", "x", i, k);
  }));
  return b;
}

Battery battery_ustar() {
  Battery b{{"z", "w"}, {}, {}};
  for (const std::string s : {"z", "w"}) {
    b.taus.push_back({s, [s](const Values& v, int i, int j) { return -v(s, i, j); }});
    b.kappas.push_back(kappa_rel(s, s, [](const Values&, int, int, int, int) { return Complex{0.0, 0.0}; }));
  }
  b.kappas.push_back(kappa_rel("z", "w", [](const Values& v, int i, int j, int k, int l) {
    return delta(j, l) * (v.sum("z", "w", i, k) - v.sum("w", "z", i, k));
  }));
  return b;
}

Battery battery_spr() {
  Battery b{{"x", "y", "z", "w"}, {}, {}};
  for (const std::string s : {"x", "y", "z", "w"}) {
    b.taus.push_back({s, [s](const Values& v, int i, int j) { return 0.5 * v(s, i, j); }});
  }
  // S(a,b) = sum_t (a_it a_kt + b_it b_kt); the mixed sum pairs the top and
  // bottom block rows.
  auto pair_sum = [](const Values& v, const std::string& a, const std::string& c, int i, int k) {
    return v.sum(a, a, i, k) + v.sum(c, c, i, k);
  };
  auto mixed = [](const Values& v, int i, int k) { return v.sum("x", "z", i, k) + v.sum("y", "w", i, k); };
  // Same-row-pair relations: kappa(a_ij, a_kl) = 1/2 (c_il c_kj + delta_jl S)
  // with c the partner block.
  const std::pair<std::string, std::string> partners[] = {{"x", "y"}, {"y", "x"}, {"z", "w"}, {"w", "z"}};
  for (const auto& [a, c] : partners) {
    const std::string top = (a == "x" || a == "y") ? "x" : "z";
    const std::string bottom = top == "x" ? "y" : "w";
    b.kappas.push_back(kappa_rel(a, a, [=](const Values& v, int i, int j, int k, int l) {
      return 0.5 * (v(c, i, l) * v(c, k, j) + delta(j, l) * pair_sum(v, top, bottom, i, k));
    }));
  }
  auto cross = [](const std::string& a, const std::string& c) {
    return [=](const Values& v, int i, int j, int k, int l) { return -0.5 * v(a, i, l) * v(c, k, j); };
  };
  b.kappas.push_back(kappa_rel("x", "y", cross("x", "y")));
  b.kappas.push_back(kappa_rel("x", "w", cross("x", "w")));
  b.kappas.push_back(kappa_rel("y", "z", cross("y", "z")));
  b.kappas.push_back(kappa_rel("z", "w", cross("z", "w")));
  b.kappas.push_back(kappa_rel("x", "z", [=](const Values& v, int i, int j, int k, int l) {
    return 0.5 * (v("y", i, l) * v("w", k, j) + delta(j, l) * mixed(v, i, k));
  }));
  b.kappas.push_back(kappa_rel("y", "w", [=](const Values& v, int i, int j, int k, int l) {
    return 0.5 * (v("x", i, l) * v("z", k, j) + delta(j, l) * mixed(v, i, k));
  }));
  return b;
}

Battery battery_sostar() {
  Battery b{{"z", "w"}, {}, {}};
  for (const std::string s : {"z", "w"}) {
    b.taus.push_back({s, [s](const Values& v, int i, int j) { return -0.5 * v(s, i, j); }});
    b.kappas.push_back(kappa_rel(s, s, [s](const Values& v, int i, int j, int k, int l) {
      return -0.5 * v(s, i, l) * v(s, k, j);
    }));
  }
  b.kappas.push_back(kappa_rel("z", "w", [](const Values& v, int i, int j, int k, int l) {
    return 0.5 * (v("z", k, j) * v("w", i, l) + delta(j, l) * (v.sum("z", "w", i, k) - v.sum("w", "z", i, k)));
  }));
  return b;
}

Battery battery_upq(const IndexSets& idx) {
  const double pq = idx.p - idx.q;
  Battery b{{"z"}, {}, {}};
  b.taus.push_back({"z", [pq](const Values& v, int i, int j) { return v.sign(j) * pq * v("z", i, j); }});
  b.kappas.push_back(kappa_rel("z", "z", [](const Values& v, int i, int j, int k, int l) {
    return -v.sign(j, l) * v("z", i, l) * v("z", k, j);
  }));
  return b;
}

Battery battery_sopq(const IndexSets& idx) {
  const double pq = idx.p - idx.q;
  Battery b{{"x"}, {}, {}};
  b.taus.push_back({"x", [pq](const Values& v, int i, int j) { return 0.5 * (1.0 + v.sign(j) * pq) * v("x", i, j); }});
  b.kappas.push_back(kappa_rel("x", "x", [](const Values& v, int i, int j, int k, int l) {
    const Complex signed_sum = v.sum("x", "x", i, k, 1, v.idx.p) - v.sum("x", "x", i, k, v.idx.p + 1, v.m);
    return 0.5 * (-v.sign(j, l) * v("x", i, l) * v("x", k, j) - delta(j, l) * v.sign(j) * signed_sum);
  }));
  b.kappas.push_back(kappa_rel(
      "x", "x",
      [](const Values& v, int i, int j, int k, int l) {
        return 0.5 * (-v.sign(j, l) * v("x", i, l) * v("x", k, j) + delta(j, l) * v.sum("x", "x", i, k));
      },
      "-corrected"));
  return b;
}

Battery battery_sppq(const IndexSets& idx) {
  const double qp = idx.q - idx.p;
  Battery b{{"z", "w"}, {}, {}};
  for (const std::string s : {"z", "w"}) {
    b.taus.push_back({s, [s, qp](const Values& v, int i, int j) {
                        return -0.5 * (v.sign(j) * 2.0 * qp + 1.0) * v(s, i, j);
                      }});
    b.kappas.push_back(kappa_rel(s, s, [s](const Values& v, int i, int j, int k, int l) {
      return -0.5 * v.sign(j, l) * v(s, i, l) * v(s, k, j);
    }));
  }
  b.kappas.push_back(kappa_rel("z", "w", [](const Values& v, int i, int j, int k, int l) {
    return -0.5 * (v.sign(j, l) * v("w", i, l) * v("z", k, j) -
                   delta(j, l) * (v.sum("z", "w", i, k) - v.sum("w", "z", i, k)));
  }));
  return b;
}

Battery battery_for(GroupFamily f, const IndexSets& idx) {
  switch (f) {
    case GroupFamily::GL_R: return battery_gl();
    case GroupFamily::UStar: return battery_ustar();
    case GroupFamily::SpR: return battery_spr();
    case GroupFamily::SOStar: return battery_sostar();
    case GroupFamily::U_pq: return battery_upq(idx);
    case GroupFamily::SO_pq: return battery_sopq(idx);
    case GroupFamily::Sp_pq: return battery_sppq(idx);
    default: throw std::invalid_argument("no coordinate lemma for this group family");
  }
}

}  // namespace

std::vector<std::string> lemma_selectors() {
  std::vector<std::string> out;
  for (const auto& e : kLemmas) out.emplace_back(e.selector);
  return out;
}

GroupFamily lemma_family(std::string_view selector) { return entry(selector).family; }

GroupDescriptor default_group_for_lemma(std::string_view selector) {
  return GroupDescriptor::parse(entry(selector).default_group);
}

std::vector<GroupDescriptor> lemma_battery_groups(std::string_view selector, int max_size) {
  const GroupFamily f = lemma_family(selector);
  std::vector<GroupDescriptor> out;
  auto keep = [&](const GroupDescriptor& d) {
    if (d.matrix_size() <= max_size) out.push_back(d);
  };
  switch (f) {
    case GroupFamily::U_pq:
    case GroupFamily::SO_pq:
    case GroupFamily::Sp_pq:
      for (const auto& [p, q] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}, {1, 3}}) keep(make_group(f, p, q));
      break;
    case GroupFamily::SOStar:
      for (int n = 2; n <= 3; ++n) keep(make_group(f, n));
      break;
    case GroupFamily::GL_R:
      for (int n = 2; n <= 4; ++n) keep(make_group(f, n));
      break;
    default:
      for (int n = 1; n <= 3; ++n) keep(make_group(f, n));
      break;
  }
  return out;
}

VerificationReport verify_lemma(const GroupDescriptor& group, std::string_view selector, const VerifyOptions& opt) {
  if (opt.samples < 1) throw std::invalid_argument("verify_lemma: samples must be >= 1");
  const Entry& e = entry(selector);
  if (group.is_dual() || group.family != e.family) {
    throw std::invalid_argument("lemma " + std::string(selector) + " is stated on " +
                                std::string(e.default_group).substr(0, std::string(e.default_group).find(':')) +
                                ", not on " + group.to_string());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const IndexSets idx = group.has_signature() ? index_sets(group.p, group.q) : IndexSets{};
  const Battery bat = battery_for(group.family, idx);
  const SignedBasis basis = metric_basis(group);
  const int ambient = group.matrix_size();

  // Coordinate programs per block, row-major.
  std::map<std::string, std::vector<FieldProgram>> progs;
  int m = 0;
  for (const auto& b : bat.blocks) {
    m = block_size(coordinate_block(group, b), ambient);
    auto& v = progs[b];
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) v.emplace_back(coordinate_field(group, b, i, j));
  }

  struct PointData {
    Values values;
    std::map<std::string, std::vector<std::vector<Jet2>>> jets;
    double membership = 0.0;
  };
  std::vector<PointData> data(static_cast<std::size_t>(opt.samples));
  parallel_for(opt.samples, [&](int s) {
    const GroupPoint pt = sample_point(group, derive_seed(opt.seed, static_cast<std::uint64_t>(s)), opt.scale);
    PointData& d = data[static_cast<std::size_t>(s)];
    d.membership = membership_residual(pt);
    d.values.idx = idx;
    d.values.m = m;
    std::vector<ComplexMatrix> gz, gzz;
    for (const auto& z : basis.elements) {
      gz.push_back(pt.matrix * z);
      gzz.push_back(gz.back() * z);
    }
    for (const auto& [b, ps] : progs) {
      ComplexMatrix vals(m, m);
      auto& js = d.jets[b];
      for (int r = 0; r < m * m; ++r) {
        const auto& prog = ps[static_cast<std::size_t>(r)];
        vals(r / m, r % m) = prog.value(pt.matrix, opt.delta);
        std::vector<Jet2> row;
        for (std::size_t k = 0; k < basis.size(); ++k) row.push_back(prog.jet(pt.matrix, gz[k], gzz[k], opt.delta));
        js.push_back(std::move(row));
      }
      d.values.blocks[b] = std::move(vals);
    }
  });

  VerificationReport rep;
  rep.subject = group.to_string();
  rep.provenance = "lemma:" + std::string(selector);
  rep.samples = opt.samples;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;

  double membership = 0.0;
  for (const auto& d : data) membership = std::max(membership, d.membership);
  rep.add_check("membership", membership, kMembershipTol);

  auto flat = [m](int i, int j) { return static_cast<std::size_t>((i - 1) * m + (j - 1)); };
  for (const auto& rel : bat.taus) {
    ResidualTracker tr;
    for (const auto& d : data) {
      const auto& js = d.jets.at(rel.block);
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
          tr.observe(relative_residual(tension_from(js[flat(i, j)], basis.signs), rel.rhs(d.values, i, j)));
    }
    rep.add_check("tau-" + rel.block, tr.max(), opt.tol);
  }
  for (const auto& rel : bat.kappas) {
    ResidualTracker tr;
    for (const auto& d : data) {
      const auto& ja = d.jets.at(rel.first);
      const auto& jb = d.jets.at(rel.second);
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
          for (int k = 1; k <= m; ++k)
            for (int l = 1; l <= m; ++l) {
              const Complex lhs = kappa_from(ja[flat(i, j)], jb[flat(k, l)], basis.signs);
              tr.observe(relative_residual(lhs, rel.rhs(d.values, i, j, k, l)));
            }
    }
    rep.add_check(rel.name, tr.max(), opt.tol);
  }

  // Eigenvalue of each column, measured; exposes which index the tau
  // eigenvalue depends on.
  if (group.has_signature()) {
    for (const auto& rel : bat.taus) {
      for (int j = 1; j <= m; ++j) {
        std::vector<Complex> lhs, rhs;
        Complex expected{0.0, 0.0};
        for (const auto& d : data) {
          const auto& js = d.jets.at(rel.block);
          for (int i = 1; i <= m; ++i) {
            const Complex v = d.values(rel.block, i, j);
            lhs.push_back(tension_from(js[flat(i, j)], basis.signs));
            rhs.push_back(v);
            if (std::abs(v) > 0.0) expected = rel.rhs(d.values, i, j) / v;
          }
        }
        rep.constants.push_back(fit_constant("tau-" + rel.block + "-col" + std::to_string(j), lhs, rhs, expected));
      }
    }
  }
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hmorph
