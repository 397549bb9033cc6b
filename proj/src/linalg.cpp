#include "hmorph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace hmorph {

namespace {

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
}

void check_index(int n, int i, const char* what) {
  if (i < 1 || i > n) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n));
  }
}

void check_pair(int n, int r, int s) {
  check_index(n, r, "r");
  check_index(n, s, "s");
  if (r >= s) throw std::invalid_argument("generator requires r < s");
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

ComplexMatrix unit_matrix(int n, int i, int j) {
  check_size(n);
  check_index(n, i, "row");
  check_index(n, j, "column");
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i - 1, j - 1) = 1.0;
  return e;
}

ComplexMatrix diag_generator(int n, int t) { return unit_matrix(n, t, t); }

ComplexMatrix sym_generator(int n, int r, int s) {
  check_pair(n, r, s);
  return kInvSqrt2 * (unit_matrix(n, r, s) + unit_matrix(n, s, r));
}

ComplexMatrix skew_generator(int n, int r, int s) {
  check_pair(n, r, s);
  return kInvSqrt2 * (unit_matrix(n, r, s) - unit_matrix(n, s, r));
}

ComplexMatrix signature_matrix(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw std::invalid_argument("signature requires p,q >= 0 and p+q >= 1");
  ComplexMatrix m = ComplexMatrix::Identity(p + q, p + q);
  for (int i = 0; i < p; ++i) m(i, i) = -1.0;
  return m;
}

ComplexMatrix symplectic_form(int n) {
  check_size(n);
  ComplexMatrix j = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& c, const ComplexMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
    throw std::invalid_argument("block_matrix: incompatible block shapes");
  }
  ComplexMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
  m << a, b, c, d;
  return m;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Complex bilinear_dot(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("bilinear_dot: size mismatch");
  return (u.array() * v.array()).sum();
}

std::vector<std::pair<int, int>> ordered_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) out.emplace_back(r, s);
  return out;
}

std::vector<std::pair<int, int>> IndexSets::lambda1() const {
  std::vector<std::pair<int, int>> out;
  for (auto [r, s] : ordered_pairs(n()))
    if (s <= p || r > p) out.emplace_back(r, s);
  return out;
}

std::vector<std::pair<int, int>> IndexSets::lambda2() const {
  std::vector<std::pair<int, int>> out;
  for (auto [r, s] : ordered_pairs(n()))
    if (r <= p && s > p) out.emplace_back(r, s);
  return out;
}

IndexSets index_sets(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("index_sets: p and q must be non-negative");
  return IndexSets{p, q};
}

// ---------------------------------------------------------------------------
// Identity suite.
//
// Every identity is quadratic in the generators, so doubling both sides puts
// the sqrt(2)-scaled lattice X~ = E_rs + E_sr, Y~ = E_rs - E_sr on the
// integers: 2 X A X^t = X~ A X~^t and 2 D A D^t = 2 E_tt A E_tt. The exact
// path compares those doubled integer matrices.

namespace {

enum class Gen { X, Y, D };

struct Term {
  Gen gen;
  int a;  // r, or t for D
  int b;  // s, unused for D
  int sign;
};

IntMatrix lattice(Gen g, int n, int a, int b) {
  IntMatrix m = IntMatrix::Zero(n, n);
  switch (g) {
    case Gen::X:
      m(a - 1, b - 1) = 1;
      m(b - 1, a - 1) = 1;
      break;
    case Gen::Y:
      m(a - 1, b - 1) = 1;
      m(b - 1, a - 1) = -1;
      break;
    case Gen::D:
      m(a - 1, a - 1) = 1;
      break;
  }
  return m;
}

ComplexMatrix real_generator(Gen g, int n, int a, int b) {
  switch (g) {
    case Gen::X: return sym_generator(n, a, b);
    case Gen::Y: return skew_generator(n, a, b);
    case Gen::D: return diag_generator(n, a);
  }
  return {};
}

// Lattice scale: doubling factor applied to the integer product so that every
// term lands in units of 1/2.
long long doubling(Gen g) { return g == Gen::D ? 2 : 1; }

std::vector<Term> terms_over(Gen g, const std::vector<std::pair<int, int>>& pairs, int sign) {
  std::vector<Term> out;
  for (auto [r, s] : pairs) out.push_back({g, r, s, sign});
  return out;
}

std::vector<Term> diag_terms(int n, int sign) {
  std::vector<Term> out;
  for (int t = 1; t <= n; ++t) out.push_back({Gen::D, t, 0, sign});
  return out;
}

std::vector<Term> concat(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// sum_k sign_k B_k^2 (float) / doubled lattice version.
void square_sum(const std::vector<Term>& terms, int n, ComplexMatrix& fl, IntMatrix& ex) {
  fl = ComplexMatrix::Zero(n, n);
  ex = IntMatrix::Zero(n, n);
  for (const auto& t : terms) {
    ComplexMatrix b = real_generator(t.gen, n, t.a, t.b);
    fl += static_cast<double>(t.sign) * (b * b);
    IntMatrix l = lattice(t.gen, n, t.a, t.b);
    ex += t.sign * doubling(t.gen) * (l * l);
  }
}

// sum_k sign_k B_k E_jl B_k^t.
void conj_sum(const std::vector<Term>& terms, int n, int j, int l, ComplexMatrix& fl, IntMatrix& ex) {
  fl = ComplexMatrix::Zero(n, n);
  ex = IntMatrix::Zero(n, n);
  ComplexMatrix e = unit_matrix(n, j, l);
  IntMatrix ei = IntMatrix::Zero(n, n);
  ei(j - 1, l - 1) = 1;
  for (const auto& t : terms) {
    ComplexMatrix b = real_generator(t.gen, n, t.a, t.b);
    fl += static_cast<double>(t.sign) * (b * e * b.transpose());
    IntMatrix lb = lattice(t.gen, n, t.a, t.b);
    ex += t.sign * doubling(t.gen) * (lb * ei * lb.transpose());
  }
}

IntMatrix int_identity(int n) { return IntMatrix::Identity(n, n); }

IntMatrix int_unit(int n, int i, int j) {
  IntMatrix m = IntMatrix::Zero(n, n);
  m(i - 1, j - 1) = 1;
  return m;
}

IntMatrix int_signature(int p, int q) {
  IntMatrix m = IntMatrix::Identity(p + q, p + q);
  for (int i = 0; i < p; ++i) m(i, i) = -1;
  return m;
}

long long pm1(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void record(IdentityReport& rep, const std::string& name, int j, int l, const ComplexMatrix& lhs,
            const IntMatrix& lhs2, const IntMatrix& rhs2) {
  IdentityCheck c;
  c.name = name;
  c.j = j;
  c.l = l;
  ComplexMatrix rhs = rhs2.cast<double>().cast<Complex>() * 0.5;
  c.float_deviation = max_abs(lhs - rhs);
  c.exact_deviation = (lhs2 - rhs2).cwiseAbs().maxCoeff();
  rep.checks.push_back(c);
}

void unsigned_set(IdentityReport& rep, int n) {
  const auto pairs = ordered_pairs(n);
  const auto xs = terms_over(Gen::X, pairs, 1);
  const auto ys = terms_over(Gen::Y, pairs, 1);
  const auto ds = diag_terms(n, 1);
  ComplexMatrix fl;
  IntMatrix ex;

  square_sum(xs, n, fl, ex);
  record(rep, identity::kSumX2, 0, 0, fl, ex, (n - 1) * int_identity(n));
  square_sum(ys, n, fl, ex);
  record(rep, identity::kSumY2, 0, 0, fl, ex, -(n - 1) * int_identity(n));
  square_sum(ds, n, fl, ex);
  record(rep, identity::kSumD2, 0, 0, fl, ex, 2 * int_identity(n));

  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) {
      const long long d = (j == l) ? 1 : 0;
      const IntMatrix elj = int_unit(n, l, j);
      conj_sum(xs, n, j, l, fl, ex);
      record(rep, identity::kConjX, j, l, fl, ex, elj + d * (int_identity(n) - 2 * elj));
      conj_sum(ys, n, j, l, fl, ex);
      record(rep, identity::kConjY, j, l, fl, ex, -(elj - d * int_identity(n)));
      conj_sum(ds, n, j, l, fl, ex);
      record(rep, identity::kConjD, j, l, fl, ex, 2 * d * elj);
    }
  }
}

void signed_set(IdentityReport& rep, int p, int q) {
  const IndexSets ix = index_sets(p, q);
  const int n = ix.n();
  const auto l1 = ix.lambda1();
  const auto l2 = ix.lambda2();
  const IntMatrix ipq = int_signature(p, q);
  const IntMatrix id = int_identity(n);
  ComplexMatrix fl;
  IntMatrix ex;

  const auto x_signed = concat(terms_over(Gen::X, l1, 1), terms_over(Gen::X, l2, -1));
  const auto y_signed = concat(terms_over(Gen::Y, l1, 1), terms_over(Gen::Y, l2, -1));
  const auto mixed = concat(concat(terms_over(Gen::X, l1, 1), terms_over(Gen::Y, l2, 1)), diag_terms(n, 1));

  square_sum(x_signed, n, fl, ex);
  record(rep, identity::kSignedX2, 0, 0, fl, ex, -(id + (p - q) * ipq));
  square_sum(y_signed, n, fl, ex);
  record(rep, identity::kSignedY2, 0, 0, fl, ex, id + (p - q) * ipq);

  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) {
      const int d = (j == l) ? 1 : 0;
      const int cj = ix.chi(j);
      const int cl = ix.chi(l);
      const IntMatrix elj = int_unit(n, l, j);
      conj_sum(x_signed, n, j, l, fl, ex);
      record(rep, identity::kSignedConjX, j, l, fl, ex, pm1(cj + cl + d) * elj + d * pm1(cj) * ipq);
      conj_sum(y_signed, n, j, l, fl, ex);
      record(rep, identity::kSignedConjY, j, l, fl, ex, pm1(cj + cl + 1) * elj + d * pm1(cj) * ipq);
      conj_sum(mixed, n, j, l, fl, ex);
      record(rep, identity::kMixed, j, l, fl, ex, pm1(cj + cl + 1) * elj + d * pm1(cj) * id);
      record(rep, identity::kMixedCorrected, j, l, fl, ex, pm1(cj + cl) * elj + d * id);
    }
  }
}

}  // namespace

double IdentityReport::max_float_deviation(const std::string& name) const {
  double m = 0.0;
  for (const auto& c : checks)
    if (c.name == name) m = std::max(m, c.float_deviation);
  return m;
}

long long IdentityReport::max_exact_deviation(const std::string& name) const {
  long long m = 0;
  for (const auto& c : checks)
    if (c.name == name) m = std::max(m, c.exact_deviation);
  return m;
}

std::vector<std::string> IdentityReport::names() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (std::find(out.begin(), out.end(), c.name) == out.end()) out.push_back(c.name);
  return out;
}

IdentityReport check_identities(int n, int p, int q) {
  IdentityReport rep;
  rep.n = n;
  rep.p = p;
  rep.q = q;
  if (n != 0) {
    if (n < 2) throw std::invalid_argument("check_identities: n must be at least 2");
    unsigned_set(rep, n);
  }
  if (p != 0 || q != 0) {
    if (p < 0 || q < 0 || p + q < 2) throw std::invalid_argument("check_identities: need p,q >= 0 and p+q >= 2");
    signed_set(rep, p, q);
  }
  return rep;
}

}  // namespace hmorph
