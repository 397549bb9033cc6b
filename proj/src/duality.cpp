#include "hmorph/duality.hpp"

#include <sstream>

namespace hmorph {

namespace {

constexpr double kSplitTol = 1e-14;

EigenFamily flip(const EigenFamily& f, const GroupDescriptor& g, const std::string& prov) {
  EigenFamily out = f;
  out.group = g;
  out.provenance = prov;
  out.lambda = -f.lambda;
  out.mu = -f.mu;
  return out;
}

std::string flipped_provenance(const std::string& prov, bool to_dual) {
  if (to_dual) return kDualPrefix + prov;
  if (prov.rfind(kDualPrefix, 0) == 0) return prov.substr(std::string(kDualPrefix).size());
  return prov;
}

}  // namespace

GroupDescriptor dual_descriptor(const GroupDescriptor& src) {
  if (src.is_dual()) throw std::invalid_argument("dual_descriptor: already a compact dual");
  GroupDescriptor d = src;
  d.family = compact_family_of(src.family);
  d.source = src.family;
  return d;
}

SignedBasis dual_basis(const GroupDescriptor& src) {
  if (src.is_dual()) throw std::invalid_argument("dual_basis: expects the non-compact group");
  const SignedBasis b = algebra_basis(src);
  SignedBasis out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const ComplexMatrix& z = b.elements[k];
    if (max_abs(z + z.adjoint()) <= kSplitTol) {
      out.push(z, -1, b.labels[k]);
    } else if (max_abs(z - z.adjoint()) <= kSplitTol) {
      out.push(kI * z, 1, "i*" + b.labels[k]);
    } else {
      throw std::logic_error("dual_basis: basis element " + b.labels[k] + " is neither Hermitian nor skew-Hermitian");
    }
  }
  return out;
}

Family dualize(const Family& f) {
  const GroupDescriptor& g = family_group(f);
  const bool to_dual = !g.is_dual();
  const GroupDescriptor target = to_dual ? dual_descriptor(g) : g.source_descriptor();
  const std::string prov = flipped_provenance(family_provenance(f), to_dual);
  if (const auto* e = std::get_if<EigenFamily>(&f)) return flip(*e, target, prov);
  const auto& b = std::get<BiEigenFamily>(f);
  BiEigenFamily out{target, prov, flip(b.first, target, prov), flip(b.second, target, prov), std::nullopt};
  if (b.mu_cross) out.mu_cross = -*b.mu_cross;
  return out;
}

std::vector<SignComparison> metric_sign_diagnostic(const GroupDescriptor& src) {
  const SignedBasis b = dual_basis(src.is_dual() ? src.source_descriptor() : src);
  std::vector<SignComparison> out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    out.push_back({b.labels[k], b.signs[k], (b.elements[k] * b.elements[k]).trace().real()});
  }
  return out;
}

VerificationReport verify_dual(const Family& dual, const VerifyOptions& opt) {
  const GroupDescriptor& g = family_group(dual);
  if (!g.is_dual()) throw std::invalid_argument("verify_dual: family does not live on a compact dual");
  VerificationReport rep = verify_family(dual, opt);
  const VerificationReport src = verify_family(dualize(dual), opt);
  for (const auto& c : src.constants) {
    const MeasuredConstant* mine = rep.find_constant(c.name);
    if (mine == nullptr) continue;
    // Constants without a uniform value (no cross relation) have no sign law.
    if (!c.expected && !(c.spread <= opt.tol)) continue;
    rep.add_check("sign-flip-" + c.name, std::abs(mine->value + c.value), opt.tol);
  }
  const auto diag = metric_sign_diagnostic(g);
  int agree = 0;
  for (const auto& d : diag) agree += d.agree() ? 1 : 0;
  std::ostringstream os;
  os << "Re trace(ZZ) matches the structural sign on " << agree << " of " << diag.size() << " dual basis elements";
  rep.notes.push_back(os.str());
  rep.wall_time_seconds += src.wall_time_seconds;
  return rep;
}

}  // namespace hmorph
