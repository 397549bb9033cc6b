#include "hmorph/groups.hpp"

#include "hmorph/duality.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <charconv>
#include <cmath>
#include <random>

namespace hmorph {

namespace {

struct FamilyName {
  GroupFamily family;
  const char* name;
  bool signature;
};

constexpr std::array<FamilyName, 9> kNames{{
    {GroupFamily::GL_R, "gl_r", false},
    {GroupFamily::SL_R, "sl_r", false},
    {GroupFamily::UStar, "u_star", false},
    {GroupFamily::SUStar, "su_star", false},
    {GroupFamily::SpR, "sp_r", false},
    {GroupFamily::SOStar, "so_star", false},
    {GroupFamily::U_pq, "u_pq", true},
    {GroupFamily::SO_pq, "so_pq", true},
    {GroupFamily::Sp_pq, "sp_pq", true},
}};

const char* family_name(GroupFamily f) {
  for (const auto& e : kNames)
    if (e.family == f) return e.name;
  switch (f) {
    case GroupFamily::DualSU: return "dual_su";
    case GroupFamily::DualSO: return "dual_so";
    case GroupFamily::DualSp: return "dual_sp";
    default: return "?";
  }
}

bool is_signature_family(GroupFamily f) {
  return f == GroupFamily::U_pq || f == GroupFamily::SO_pq || f == GroupFamily::Sp_pq;
}

bool is_compact_family(GroupFamily f) {
  return f == GroupFamily::DualSU || f == GroupFamily::DualSO || f == GroupFamily::DualSp;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid integer '" + std::string(s) + "' in group descriptor");
  }
  return v;
}

void validate(const GroupDescriptor& d) {
  const auto src = d.source;
  if (is_signature_family(src)) {
    if (d.p < 1 || d.q < 1) throw std::invalid_argument("signature groups need p >= 1 and q >= 1");
    if (d.n != d.p + d.q) throw std::invalid_argument("signature groups need n = p + q");
    return;
  }
  if (src == GroupFamily::SL_R && d.n < 2) throw std::invalid_argument("sl_r needs n >= 2");
  if (d.n < 1) throw std::invalid_argument("group size must be positive");
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix zeros(int n) { return ComplexMatrix::Zero(n, n); }

ComplexMatrix diag2(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = static_cast<int>(a.rows());
  return block_matrix(a, zeros(n), zeros(n), b);
}

ComplexMatrix offdiag2(const ComplexMatrix& b, const ComplexMatrix& c) {
  const int n = static_cast<int>(b.rows());
  return block_matrix(zeros(n), b, c, zeros(n));
}

std::string pair_label(const char* g, int r, int s) {
  return std::string(g) + "_" + std::to_string(r) + std::to_string(s);
}

std::string diag_label(const char* g, int t) { return std::string(g) + "_" + std::to_string(t); }

// Orthonormal traceless diagonal basis H_1..H_{n-1}.
ComplexMatrix traceless_diag(int n, int t) {
  ComplexMatrix h = zeros(n);
  const double norm = std::sqrt(static_cast<double>(t) * (t + 1));
  for (int s = 0; s < t; ++s) h(s, s) = 1.0 / norm;
  h(t, t) = -static_cast<double>(t) / norm;
  return h;
}

// Generators of gl(n,R) in display order, with labels.
struct RealGen {
  ComplexMatrix m;
  std::string label;
};

std::vector<RealGen> gl_generators(int n, bool traceless) {
  std::vector<RealGen> out;
  for (auto [r, s] : ordered_pairs(n)) out.push_back({sym_generator(n, r, s), pair_label("X", r, s)});
  for (auto [r, s] : ordered_pairs(n)) out.push_back({skew_generator(n, r, s), pair_label("Y", r, s)});
  if (traceless) {
    for (int t = 1; t < n; ++t) out.push_back({traceless_diag(n, t), diag_label("H", t)});
  } else {
    for (int t = 1; t <= n; ++t) out.push_back({diag_generator(n, t), diag_label("D", t)});
  }
  return out;
}

SignedBasis basis_gl(int n, bool traceless) {
  SignedBasis b;
  for (auto& g : gl_generators(n, traceless)) b.push(g.m, 1, g.label);
  return b;
}

SignedBasis basis_ustar(int n, bool traceless) {
  SignedBasis b;
  const auto gens = gl_generators(n, traceless);
  const auto all = gl_generators(n, false);
  for (const auto& g : gens) b.push(kInvSqrt2 * diag2(g.m, g.m), 1, "diag(" + g.label + "," + g.label + ")");
  for (const auto& g : all)
    b.push(kInvSqrt2 * diag2(kI * g.m, -kI * g.m), 1, "diag(i" + g.label + ",-i" + g.label + ")");
  for (const auto& g : all) b.push(kInvSqrt2 * offdiag2(g.m, -g.m), 1, "off(" + g.label + ",-" + g.label + ")");
  for (const auto& g : all)
    b.push(kInvSqrt2 * offdiag2(kI * g.m, kI * g.m), 1, "off(i" + g.label + ",i" + g.label + ")");
  return b;
}

SignedBasis basis_spr(int n) {
  SignedBasis b;
  const auto pairs = ordered_pairs(n);
  for (auto [r, s] : pairs) {
    auto y = skew_generator(n, r, s);
    b.push(kInvSqrt2 * diag2(y, y), 1, "diag(" + pair_label("Y", r, s) + "," + pair_label("Y", r, s) + ")");
  }
  for (auto [r, s] : pairs) {
    auto x = sym_generator(n, r, s);
    b.push(kInvSqrt2 * diag2(x, -x), 1, "diag(" + pair_label("X", r, s) + ",-" + pair_label("X", r, s) + ")");
  }
  for (int t = 1; t <= n; ++t) {
    auto d = diag_generator(n, t);
    b.push(kInvSqrt2 * diag2(d, -d), 1, "diag(" + diag_label("D", t) + ",-" + diag_label("D", t) + ")");
  }
  for (auto [r, s] : pairs) {
    auto x = sym_generator(n, r, s);
    b.push(kInvSqrt2 * offdiag2(x, x), 1, "off(" + pair_label("X", r, s) + "," + pair_label("X", r, s) + ")");
  }
  for (auto [r, s] : pairs) {
    auto x = sym_generator(n, r, s);
    b.push(kInvSqrt2 * offdiag2(x, -x), 1, "off(" + pair_label("X", r, s) + ",-" + pair_label("X", r, s) + ")");
  }
  for (int t = 1; t <= n; ++t) {
    auto d = diag_generator(n, t);
    b.push(kInvSqrt2 * offdiag2(d, d), 1, "off(" + diag_label("D", t) + "," + diag_label("D", t) + ")");
  }
  for (int t = 1; t <= n; ++t) {
    auto d = diag_generator(n, t);
    b.push(kInvSqrt2 * offdiag2(d, -d), 1, "off(" + diag_label("D", t) + ",-" + diag_label("D", t) + ")");
  }
  return b;
}

SignedBasis basis_sostar(int n) {
  SignedBasis b;
  const auto pairs = ordered_pairs(n);
  for (auto [r, s] : pairs) {
    auto y = skew_generator(n, r, s);
    b.push(kInvSqrt2 * diag2(y, y), 1, "diag(" + pair_label("Y", r, s) + "," + pair_label("Y", r, s) + ")");
  }
  for (auto [r, s] : pairs) {
    auto x = sym_generator(n, r, s);
    b.push(kInvSqrt2 * diag2(kI * x, -kI * x), 1,
           "diag(i" + pair_label("X", r, s) + ",-i" + pair_label("X", r, s) + ")");
  }
  for (int t = 1; t <= n; ++t) {
    auto d = diag_generator(n, t);
    b.push(kInvSqrt2 * diag2(kI * d, -kI * d), 1, "diag(i" + diag_label("D", t) + ",-i" + diag_label("D", t) + ")");
  }
  for (auto [r, s] : pairs) {
    auto y = skew_generator(n, r, s);
    b.push(kInvSqrt2 * offdiag2(y, -y), 1, "off(" + pair_label("Y", r, s) + ",-" + pair_label("Y", r, s) + ")");
  }
  for (auto [r, s] : pairs) {
    auto y = skew_generator(n, r, s);
    b.push(kInvSqrt2 * offdiag2(kI * y, kI * y), 1,
           "off(i" + pair_label("Y", r, s) + ",i" + pair_label("Y", r, s) + ")");
  }
  return b;
}

SignedBasis basis_upq(int p, int q) {
  SignedBasis b;
  const auto ix = index_sets(p, q);
  const int n = ix.n();
  for (auto [r, s] : ix.lambda1()) b.push(kI * sym_generator(n, r, s), 1, "i" + pair_label("X", r, s));
  for (auto [r, s] : ix.lambda1()) b.push(skew_generator(n, r, s), 1, pair_label("Y", r, s));
  for (auto [r, s] : ix.lambda2()) b.push(sym_generator(n, r, s), 1, pair_label("X", r, s));
  for (auto [r, s] : ix.lambda2()) b.push(kI * skew_generator(n, r, s), 1, "i" + pair_label("Y", r, s));
  for (int t = 1; t <= n; ++t) b.push(kI * diag_generator(n, t), 1, "i" + diag_label("D", t));
  return b;
}

SignedBasis basis_sopq(int p, int q) {
  SignedBasis b;
  const auto ix = index_sets(p, q);
  const int n = ix.n();
  for (auto [r, s] : ix.lambda1()) b.push(skew_generator(n, r, s), 1, pair_label("Y", r, s));
  for (auto [r, s] : ix.lambda2()) b.push(sym_generator(n, r, s), 1, pair_label("X", r, s));
  return b;
}

SignedBasis basis_sppq(int p, int q) {
  SignedBasis b;
  const auto ix = index_sets(p, q);
  const int n = ix.n();
  auto lab = [](const std::string& a, const std::string& c, bool off) {
    return std::string(off ? "off(" : "diag(") + a + "," + c + ")";
  };
  for (auto [r, s] : ix.lambda1()) {
    auto y = skew_generator(n, r, s);
    auto x = sym_generator(n, r, s);
    auto yl = pair_label("Y", r, s);
    auto xl = pair_label("X", r, s);
    b.push(kInvSqrt2 * diag2(y, y), 1, lab(yl, yl, false));
    b.push(kInvSqrt2 * diag2(kI * x, -kI * x), 1, lab("i" + xl, "-i" + xl, false));
  }
  for (auto [r, s] : ix.lambda2()) {
    auto y = skew_generator(n, r, s);
    auto x = sym_generator(n, r, s);
    auto yl = pair_label("Y", r, s);
    auto xl = pair_label("X", r, s);
    b.push(kInvSqrt2 * diag2(x, x), 1, lab(xl, xl, false));
    b.push(kInvSqrt2 * diag2(kI * y, -kI * y), 1, lab("i" + yl, "-i" + yl, false));
  }
  for (auto [r, s] : ix.lambda1()) {
    auto x = sym_generator(n, r, s);
    auto xl = pair_label("X", r, s);
    b.push(kInvSqrt2 * offdiag2(x, -x), 1, lab(xl, "-" + xl, true));
    b.push(kInvSqrt2 * offdiag2(kI * x, kI * x), 1, lab("i" + xl, "i" + xl, true));
  }
  for (auto [r, s] : ix.lambda2()) {
    auto y = skew_generator(n, r, s);
    auto yl = pair_label("Y", r, s);
    b.push(kInvSqrt2 * offdiag2(y, -y), 1, lab(yl, "-" + yl, true));
    b.push(kInvSqrt2 * offdiag2(kI * y, kI * y), 1, lab("i" + yl, "i" + yl, true));
  }
  for (int t = 1; t <= n; ++t) {
    auto d = diag_generator(n, t);
    auto dl = diag_label("D", t);
    b.push(kInvSqrt2 * diag2(kI * d, -kI * d), 1, lab("i" + dl, "-i" + dl, false));
    b.push(kInvSqrt2 * offdiag2(d, -d), 1, lab(dl, "-" + dl, true));
    b.push(kInvSqrt2 * offdiag2(kI * d, kI * d), 1, lab("i" + dl, "i" + dl, true));
  }
  return b;
}

// Structure matrices used by the defining relations.
struct Structure {
  int size = 0;
  int half = 0;
  ComplexMatrix ipq;    // I_pq (signature families)
  ComplexMatrix jn;     // J_half (even-size families)
  ComplexMatrix inn;    // diag(-I, I) of size 2*half
  ComplexMatrix itwid;  // diag(I_pq, I_pq)
};

Structure structure(const GroupDescriptor& d) {
  Structure s;
  s.size = d.matrix_size();
  if (s.size % 2 == 0) {
    s.half = s.size / 2;
    s.jn = symplectic_form(s.half);
    s.inn = signature_matrix(s.half, s.half);
  }
  if (d.has_signature()) {
    s.ipq = signature_matrix(d.p, d.q);
    s.itwid = diag2(s.ipq, s.ipq);
  }
  return s;
}

double det_residual(const ComplexMatrix& g) { return std::abs(g.determinant() - 1.0); }

double imag_residual(const ComplexMatrix& g) { return max_abs(g.imag().cast<Complex>()); }

// g J = J conj(g): the block pattern [[z, w], [-conj(w), conj(z)]].
double quaternionic_residual(const ComplexMatrix& g, const ComplexMatrix& j) {
  return max_abs(g * j - j * g.conjugate());
}

}  // namespace

// ---------------------------------------------------------------------------

bool GroupDescriptor::is_dual() const { return is_compact_family(family); }

bool GroupDescriptor::has_signature() const { return is_signature_family(source); }

int GroupDescriptor::matrix_size() const {
  switch (source) {
    case GroupFamily::UStar:
    case GroupFamily::SUStar:
    case GroupFamily::SpR:
    case GroupFamily::SOStar:
    case GroupFamily::Sp_pq:
      return 2 * n;
    default:
      return n;
  }
}

GroupDescriptor GroupDescriptor::source_descriptor() const {
  GroupDescriptor s = *this;
  s.family = source;
  return s;
}

std::string GroupDescriptor::to_string() const {
  std::string body = family_name(source);
  body += ":";
  if (has_signature()) {
    body += std::to_string(p) + "," + std::to_string(q);
  } else {
    body += std::to_string(n);
  }
  return is_dual() ? "dual:" + body : body;
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  bool dual = false;
  if (text.starts_with("dual:")) {
    dual = true;
    text.remove_prefix(5);
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("group descriptor must look like 'family:args', got '" + std::string(text) + "'");
  }
  const auto name = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  for (const auto& e : kNames) {
    if (name != e.name) continue;
    GroupDescriptor d;
    if (e.signature) {
      const auto comma = args.find(',');
      if (comma == std::string_view::npos) throw std::invalid_argument("expected 'p,q' for " + std::string(name));
      d = make_group(e.family, parse_int(args.substr(0, comma)), parse_int(args.substr(comma + 1)));
    } else {
      d = make_group(e.family, parse_int(args));
    }
    if (dual) {
      d.family = compact_family_of(d.source);
    }
    return d;
  }
  throw std::invalid_argument("unknown group family '" + std::string(name) + "'");
}

GroupDescriptor make_group(GroupFamily family, int n) {
  if (is_signature_family(family) || is_compact_family(family)) {
    throw std::invalid_argument("make_group(family, n): use (p, q) for signature groups");
  }
  GroupDescriptor d{family, n, 0, 0, family};
  validate(d);
  return d;
}

GroupDescriptor make_group(GroupFamily family, int p, int q) {
  if (!is_signature_family(family)) throw std::invalid_argument("make_group(family, p, q): not a signature group");
  GroupDescriptor d{family, p + q, p, q, family};
  validate(d);
  return d;
}

GroupFamily compact_family_of(GroupFamily source) {
  switch (source) {
    case GroupFamily::GL_R:
    case GroupFamily::SL_R:
    case GroupFamily::UStar:
    case GroupFamily::SUStar:
    case GroupFamily::U_pq:
      return GroupFamily::DualSU;
    case GroupFamily::SOStar:
    case GroupFamily::SO_pq:
      return GroupFamily::DualSO;
    case GroupFamily::SpR:
    case GroupFamily::Sp_pq:
      return GroupFamily::DualSp;
    default:
      throw std::invalid_argument("compact_family_of: not a non-compact family");
  }
}

void SignedBasis::push(ComplexMatrix m, int sign, std::string label) {
  elements.push_back(std::move(m));
  signs.push_back(sign);
  labels.push_back(std::move(label));
}

SignedBasis algebra_basis(const GroupDescriptor& d) {
  if (d.is_dual()) throw std::invalid_argument("algebra_basis: dual groups use dual_basis");
  switch (d.family) {
    case GroupFamily::GL_R: return basis_gl(d.n, false);
    case GroupFamily::SL_R: return basis_gl(d.n, true);
    case GroupFamily::UStar: return basis_ustar(d.n, false);
    case GroupFamily::SUStar: return basis_ustar(d.n, true);
    case GroupFamily::SpR: return basis_spr(d.n);
    case GroupFamily::SOStar: return basis_sostar(d.n);
    case GroupFamily::U_pq: return basis_upq(d.p, d.q);
    case GroupFamily::SO_pq: return basis_sopq(d.p, d.q);
    case GroupFamily::Sp_pq: return basis_sppq(d.p, d.q);
    default: break;
  }
  throw std::invalid_argument("algebra_basis: unsupported family");
}

SignedBasis metric_basis(const GroupDescriptor& d) {
  return d.is_dual() ? dual_basis(d.source_descriptor()) : algebra_basis(d);
}

int algebra_dimension(const GroupDescriptor& d) {
  const int n = d.n;
  switch (d.source) {
    case GroupFamily::GL_R: return n * n;
    case GroupFamily::SL_R: return n * n - 1;
    case GroupFamily::UStar: return 4 * n * n;
    case GroupFamily::SUStar: return 4 * n * n - 1;
    case GroupFamily::SpR: return n * (2 * n + 1);
    case GroupFamily::SOStar: return n * (2 * n - 1);
    case GroupFamily::U_pq: return n * n;
    case GroupFamily::SO_pq: return n * (n - 1) / 2;
    case GroupFamily::Sp_pq: return n * (2 * n + 1);
    default: return 0;
  }
}

double membership_residual(const GroupPoint& pt) {
  const auto& d = pt.group;
  const auto& g = pt.matrix;
  if (g.rows() != d.matrix_size() || g.cols() != d.matrix_size()) {
    throw std::invalid_argument("membership_residual: matrix size does not match group");
  }
  const Structure s = structure(d);
  const ComplexMatrix id = ComplexMatrix::Identity(s.size, s.size);
  double r = 0.0;
  auto take = [&r](double v) { r = std::max(r, v); };

  if (d.is_dual()) {
    take(max_abs(g * g.adjoint() - id));
    switch (d.source) {
      case GroupFamily::SL_R:
      case GroupFamily::SUStar:
        take(det_residual(g));
        break;
      case GroupFamily::SpR:
        take(max_abs(g * s.jn * g.transpose() - s.jn));
        break;
      case GroupFamily::SOStar: {
        const ComplexMatrix ij = s.inn * s.jn;
        take(max_abs(g * ij * g.transpose() - ij));
        take(det_residual(g));
        break;
      }
      case GroupFamily::SO_pq:
        take(max_abs(g * s.ipq * g.transpose() - s.ipq));
        take(det_residual(g));
        break;
      case GroupFamily::Sp_pq: {
        const ComplexMatrix jt = s.jn * s.itwid;
        take(max_abs(g * jt * g.transpose() - jt));
        break;
      }
      default:
        break;
    }
    return r;
  }

  switch (d.family) {
    case GroupFamily::GL_R:
      take(imag_residual(g));
      break;
    case GroupFamily::SL_R:
      take(imag_residual(g));
      take(det_residual(g));
      break;
    case GroupFamily::UStar:
      take(quaternionic_residual(g, s.jn));
      break;
    case GroupFamily::SUStar:
      take(quaternionic_residual(g, s.jn));
      take(det_residual(g));
      break;
    case GroupFamily::SpR:
      take(imag_residual(g));
      take(max_abs(g * s.jn * g.transpose() - s.jn));
      break;
    case GroupFamily::SOStar: {
      const ComplexMatrix ij = s.inn * s.jn;
      take(quaternionic_residual(g, s.jn));
      take(max_abs(g * s.inn * g.adjoint() - s.inn));
      take(max_abs(g * ij * g.transpose() - ij));
      break;
    }
    case GroupFamily::U_pq:
      take(max_abs(g * s.ipq * g.adjoint() - s.ipq));
      break;
    case GroupFamily::SO_pq:
      take(imag_residual(g));
      take(max_abs(g * s.ipq * g.transpose() - s.ipq));
      take(det_residual(g));
      break;
    case GroupFamily::Sp_pq:
      take(quaternionic_residual(g, s.jn));
      take(max_abs(g * s.itwid * g.adjoint() - s.itwid));
      break;
    default:
      break;
  }
  return r;
}

double algebra_residual(const GroupDescriptor& d, const ComplexMatrix& z) {
  if (z.rows() != d.matrix_size() || z.cols() != d.matrix_size()) {
    throw std::invalid_argument("algebra_residual: matrix size does not match group");
  }
  const Structure s = structure(d);
  double r = 0.0;
  auto take = [&r](double v) { r = std::max(r, v); };
  const Complex tr = z.trace();

  if (d.is_dual()) {
    take(max_abs(z + z.adjoint()));
    switch (d.source) {
      case GroupFamily::SL_R:
      case GroupFamily::SUStar:
        take(std::abs(tr));
        break;
      case GroupFamily::SpR:
        take(max_abs(z * s.jn + s.jn * z.transpose()));
        break;
      case GroupFamily::SOStar: {
        const ComplexMatrix ij = s.inn * s.jn;
        take(max_abs(z * ij + ij * z.transpose()));
        take(std::abs(tr));
        break;
      }
      case GroupFamily::SO_pq:
        take(max_abs(z.transpose() * s.ipq + s.ipq * z));
        take(std::abs(tr));
        break;
      case GroupFamily::Sp_pq: {
        const ComplexMatrix jt = s.jn * s.itwid;
        take(max_abs(z * jt + jt * z.transpose()));
        break;
      }
      default:
        break;
    }
    return r;
  }

  switch (d.family) {
    case GroupFamily::GL_R:
      take(imag_residual(z));
      break;
    case GroupFamily::SL_R:
      take(imag_residual(z));
      take(std::abs(tr));
      break;
    case GroupFamily::UStar:
      take(quaternionic_residual(z, s.jn));
      break;
    case GroupFamily::SUStar:
      take(quaternionic_residual(z, s.jn));
      take(std::abs(tr));
      break;
    case GroupFamily::SpR:
      take(imag_residual(z));
      take(max_abs(z * s.jn + s.jn * z.transpose()));
      break;
    case GroupFamily::SOStar: {
      const ComplexMatrix ij = s.inn * s.jn;
      take(quaternionic_residual(z, s.jn));
      take(max_abs(z.adjoint() * s.inn + s.inn * z));
      take(max_abs(z * ij + ij * z.transpose()));
      break;
    }
    case GroupFamily::U_pq:
      take(max_abs(z.adjoint() * s.ipq + s.ipq * z));
      break;
    case GroupFamily::SO_pq:
      take(imag_residual(z));
      take(max_abs(z.transpose() * s.ipq + s.ipq * z));
      take(std::abs(tr));
      break;
    case GroupFamily::Sp_pq:
      take(quaternionic_residual(z, s.jn));
      take(max_abs(z.adjoint() * s.itwid + s.itwid * z));
      break;
    default:
      break;
  }
  return r;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  if (!a.allFinite()) throw ExponentialError("matrix_exp: argument is not finite");
  ComplexMatrix e = a.exp();
  if (!e.allFinite()) throw ExponentialError("matrix_exp: scaling and squaring produced non-finite entries");
  return e;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over (seed, index)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GroupPoint sample_point(const GroupDescriptor& d, std::uint64_t seed, double scale) {
  if (!(scale >= 0.0)) throw std::invalid_argument("sample_point: scale must be non-negative");
  const SignedBasis basis = metric_basis(d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-scale, scale);
  const int size = d.matrix_size();
  ComplexMatrix a = ComplexMatrix::Zero(size, size);
  for (const auto& z : basis.elements) a += coeff(rng) * z;
  return GroupPoint{d, matrix_exp(a)};
}

std::vector<GroupPoint> sample_points(const GroupDescriptor& d, int count, std::uint64_t seed, double scale) {
  std::vector<GroupPoint> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(sample_point(d, derive_seed(seed, static_cast<std::uint64_t>(i)), scale));
  return out;
}

bool BasisReport::pass(double tol) const {
  return count == expected_dimension && orthonormality_deviation <= tol && algebra_deviation <= tol &&
         sign_deviation <= tol;
}

BasisReport verify_basis(const GroupDescriptor& d) {
  BasisReport rep;
  rep.group = d;
  const SignedBasis b = metric_basis(d);
  rep.count = static_cast<int>(b.size());
  rep.expected_dimension = algebra_dimension(d);
  for (std::size_t a = 0; a < b.size(); ++a) {
    for (std::size_t c = 0; c < b.size(); ++c) {
      const double g = (b.elements[a] * b.elements[c].adjoint()).trace().real();
      rep.orthonormality_deviation = std::max(rep.orthonormality_deviation, std::abs(g - (a == c ? 1.0 : 0.0)));
    }
    rep.algebra_deviation = std::max(rep.algebra_deviation, algebra_residual(d, b.elements[a]));
    if (d.is_dual()) {
      // k elements lie in the non-compact algebra itself (sign -1); ip elements
      // become members after dividing by i (sign +1).
      const auto src = d.source_descriptor();
      const bool in_k = algebra_residual(src, b.elements[a]) <= 1e-12;
      const bool in_ip = algebra_residual(src, -kI * b.elements[a]) <= 1e-12;
      const int expected = in_k ? -1 : (in_ip ? 1 : 0);
      if (expected == 0 || expected != b.signs[a]) rep.sign_deviation = 1.0;
    } else if (b.signs[a] != 1) {
      rep.sign_deviation = 1.0;
    }
  }
  return rep;
}

std::string block_name(Block b) {
  switch (b) {
    case Block::Full: return "full";
    case Block::TopLeft: return "tl";
    case Block::TopRight: return "tr";
    case Block::BottomLeft: return "bl";
    case Block::BottomRight: return "br";
  }
  return "full";
}

Block parse_block(std::string_view name) {
  if (name == "full") return Block::Full;
  if (name == "tl") return Block::TopLeft;
  if (name == "tr") return Block::TopRight;
  if (name == "bl") return Block::BottomLeft;
  if (name == "br") return Block::BottomRight;
  throw std::invalid_argument("unknown block '" + std::string(name) + "'");
}

Block coordinate_block(const GroupDescriptor& d, std::string_view name) {
  auto bad = [&]() {
    return std::invalid_argument("coordinate '" + std::string(name) + "' is not defined on " + d.to_string());
  };
  switch (d.source) {
    case GroupFamily::GL_R:
    case GroupFamily::SL_R:
    case GroupFamily::SO_pq:
      if (name == "x") return Block::Full;
      throw bad();
    case GroupFamily::U_pq:
      if (name == "z") return Block::Full;
      throw bad();
    case GroupFamily::UStar:
    case GroupFamily::SUStar:
    case GroupFamily::SOStar:
    case GroupFamily::Sp_pq:
      if (name == "z") return Block::TopLeft;
      if (name == "w") return Block::TopRight;
      throw bad();
    case GroupFamily::SpR:
      if (name == "x") return Block::TopLeft;
      if (name == "y") return Block::TopRight;
      if (name == "z") return Block::BottomLeft;
      if (name == "w") return Block::BottomRight;
      throw bad();
    default:
      throw bad();
  }
}

}  // namespace hmorph
