#pragma once

#include "hmorph/calculus.hpp"
#include "hmorph/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hmorph {

/// Functions with tau(phi) = lambda phi and kappa(phi, psi) = mu phi psi,
/// stored through a spanning set of generators.
struct EigenFamily {
  GroupDescriptor group;
  std::string provenance;
  std::vector<ScalarField> generators;
  Complex lambda{0.0, 0.0};
  Complex mu{0.0, 0.0};
};

/// Two eigenfamilies on the same group. When mu_cross is set the union is a
/// bi-eigenfamily with kappa(phi, psi) = mu_cross phi psi across the parts;
/// without it the pair only claims that each part is an eigenfamily.
struct BiEigenFamily {
  GroupDescriptor group;
  std::string provenance;
  EigenFamily first;
  EigenFamily second;
  std::optional<Complex> mu_cross;
};

using Family = std::variant<EigenFamily, BiEigenFamily>;

const GroupDescriptor& family_group(const Family& f);
const std::string& family_provenance(const Family& f);
// All generators, first part before second.
std::vector<ScalarField> family_generators(const Family& f);

inline constexpr double kIsotropyTol = 1e-12;
inline constexpr double kMembershipTol = 1e-10;

/// floor(n/2) vectors e_{2k-1} + i e_{2k} spanning a maximal isotropic
/// subspace for (u, v) = sum u_k v_k. Requires n >= 2.
std::vector<ComplexVector> max_isotropic_subspace(int n);

/// max |(u, v)| over all pairs.
double isotropy_defect(const std::vector<ComplexVector>& vectors);

/// A fixed generic vector with all entries nonzero, used when the caller
/// supplies none.
ComplexVector default_vector(int n);

/// Embeds x into the coordinates offset+1 .. offset+size of C^n.
ComplexVector embed(const ComplexVector& x, int n, int offset);

// Constructors. Each validates its parameters and throws std::invalid_argument
// on zero vectors, wrong lengths or violated isotropy/support conditions.

EigenFamily family_glr(int n, const std::vector<ComplexVector>& isotropic);

/// Pairs (A, B) must make AB^t, AD^t - BC^t, CD^t symmetric for all members.
EigenFamily family_ustar(int n, const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& pairs,
                         std::string provenance = "5.2");
EigenFamily family_ustar_xi(int n, Complex xi);
EigenFamily family_ustar_p(int n, const ComplexVector& p);

EigenFamily family_spr_v(int n, const ComplexVector& v);
EigenFamily family_spr_ab(int n, const ComplexVector& a, const ComplexVector& b);

BiEigenFamily bifamily_sostar(int n, const ComplexVector& v);
BiEigenFamily family_sostar_a(int n, const ComplexVector& a);

BiEigenFamily bifamily_upq(int p, int q, const ComplexVector& v);
BiEigenFamily family_upq_uv(int p, int q, const ComplexVector& u, const ComplexVector& v);

/// Uses the maximal isotropic subspaces of C^p_1 and C^q_2 built by
/// max_isotropic_subspace. Requires p, q >= 2.
BiEigenFamily bifamily_sopq(int p, int q, const ComplexVector& u);
BiEigenFamily bifamily_sopq(int p, int q, const ComplexVector& u, const std::vector<ComplexVector>& v1,
                            const std::vector<ComplexVector>& v2);
BiEigenFamily family_sopq_uv(int p, int q, const ComplexVector& u, const ComplexVector& v);

BiEigenFamily bifamily_sppq(int p, int q, const ComplexVector& v);

/// Moves a family on GL(n,R) or U*(2n) to SL(n,R) or SU*(2n). Degree-one
/// families lose the identity direction: lambda - 1/N and mu - 1/N for
/// ambient size N.
EigenFamily restrict_to_special(const EigenFamily& f);

struct FamilyParams {
  std::optional<ComplexVector> v;
  std::optional<ComplexVector> u;
  std::optional<ComplexVector> a;
  std::optional<ComplexVector> b;
  std::optional<Complex> xi;
  std::vector<ComplexVector> isotropic;  // explicit V for 4.2
};

/// Builds the family named by a theorem or example selector ("4.2", "4.3",
/// "5.2", "5.3", "5.4", "6.2", "6.3", "8.2", "8.3", "10.2", "10.3", "11.2",
/// "11.3", "12.2") on the given group.
Family make_family(const GroupDescriptor& group, std::string_view selector, const FamilyParams& params = {});

std::vector<std::string> family_selectors();

/// A group the selector is defined on, for defaults and batch runs.
GroupDescriptor default_group_for(std::string_view selector);

struct VerifyOptions {
  int samples = 20;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  double scale = kDefaultSampleScale;
  double delta = kPoleGuard;
};

/// Checks the family axioms at sampled points, generator pair by generator
/// pair, and fits the constants by least squares.
VerificationReport verify_family(const Family& f, const VerifyOptions& opt = {});

}  // namespace hmorph
