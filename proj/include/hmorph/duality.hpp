#pragma once

#include "hmorph/families.hpp"

#include <string>
#include <vector>

namespace hmorph {

/// Compact dual descriptor of a non-compact group.
GroupDescriptor dual_descriptor(const GroupDescriptor& src);

/// Cartan split of algebra_basis(src): skew-Hermitian elements form k and are
/// kept with sign -1, Hermitian elements X form p and enter as iX with sign +1.
/// Order follows algebra_basis(src).
SignedBasis dual_basis(const GroupDescriptor& src);

/// Moves a family to the compact dual (or back). Generators are reused as
/// polynomials; lambda, mu and mu_cross change sign. Dualizing twice returns
/// the original family.
Family dualize(const Family& f);

inline constexpr const char* kDualPrefix = "dual-of:";

/// One row of the comparison between the structural signs and the signs of
/// the quadratic form Re trace(ZZ) on the dual basis.
struct SignComparison {
  std::string label;
  int structural = 0;
  double trace_form = 0.0;
  bool agree() const { return (trace_form > 0.0 ? 1 : -1) == structural; }
};

std::vector<SignComparison> metric_sign_diagnostic(const GroupDescriptor& src);

/// verify_family on the dual group plus the sign-flip comparison against the
/// source family measured with the same options.
VerificationReport verify_dual(const Family& dual, const VerifyOptions& opt = {});

}  // namespace hmorph
