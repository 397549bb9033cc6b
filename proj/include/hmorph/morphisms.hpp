#pragma once

#include "hmorph/families.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace hmorph {

/// Polynomial in vars1 + vars2 variables; the first block carries the first
/// family (or the only one), the second block the second part of a
/// bi-eigenfamily.
struct MultiPoly {
  int vars1 = 0;
  int vars2 = 0;
  std::map<std::vector<int>, Complex> terms;  // exponent vector -> coefficient

  int num_vars() const { return vars1 + vars2; }
  bool is_zero() const;
  /// Adds c * prod x_k^e_k; validates the exponent vector length.
  void add(const std::vector<int>& exponents, Complex c);
  /// (d1, d2) shared by every term; throws std::invalid_argument if the
  /// polynomial is not bi-homogeneous or is zero.
  std::pair<int, int> bidegree() const;
  /// Total degree shared by every term; throws if not homogeneous.
  int degree() const;
};

/// Sum of up to max_terms distinct random monomials of the given degree with
/// coefficients uniform in the unit square.
MultiPoly random_homogeneous(int vars, int degree, std::mt19937_64& rng, int max_terms = 4);
MultiPoly random_bihomogeneous(int vars1, int vars2, int d1, int d2, std::mt19937_64& rng, int max_terms = 4);

/// Substitutes the family generators into the polynomial.
ScalarField compose(const Family& f, const MultiPoly& poly);

struct RationalMorphism {
  Family family;
  MultiPoly numerator;
  MultiPoly denominator;
  ScalarField numerator_field;
  ScalarField denominator_field;
  ScalarField field;  // numerator_field / denominator_field
};

/// Validates equal positive (bi-)degree, linear independence and a non-zero
/// denominator. Plain eigenfamilies take homogeneous polynomials in their
/// generators; bi-eigenfamilies take bi-homogeneous ones in both parts.
RationalMorphism build_morphism(const Family& f, const MultiPoly& numerator, const MultiPoly& denominator);

struct QuotientTauKappa {
  Complex tau{0.0, 0.0};    // via the quotient formulas
  Complex kappa{0.0, 0.0};
  Complex tau_direct{0.0, 0.0};  // jets of the quotient field
  Complex kappa_direct{0.0, 0.0};
  // Q^2 kappa(P,P), PQ kappa(P,Q), P^2 kappa(Q,Q)
  Complex triple[3];
  Complex value{0.0, 0.0};
  // tension_scale and kappa_scale of the quotient's jets
  double tau_scale = 0.0;
  double kappa_scale = 0.0;
  // largest of |Q|^2 kappa_scale(P,P), |PQ| kappa_scale(P,Q), |P|^2 kappa_scale(Q,Q)
  double triple_scale = 0.0;
};

/// Tension and conformality of P/Q at a point, both from tau and kappa of P
/// and Q and directly from the quotient's jets. Throws PoleError when
/// |Q(p)| < guard.
QuotientTauKappa quotient_tau_kappa(const ScalarField& numerator, const ScalarField& denominator,
                                    const GroupPoint& p, const SignedBasis& basis, double guard = kPoleGuard);
QuotientTauKappa quotient_tau_kappa(const RationalMorphism& m, const GroupPoint& p, const SignedBasis& basis,
                                    double guard = kPoleGuard);

/// max(|t1 - t2|, |t2 - t3|) / max(1, triple_scale) for the three terms of
/// the triple-equality criterion. The terms vanish together for many
/// morphisms, so they are compared against the size of what they sum.
double triple_equality_defect(const QuotientTauKappa& r);

inline constexpr double kDualPathTol = 1e-10;
inline constexpr double kNonConstantTol = 1e-6;
// Tolerance for residuals measured against the size of the summed terms.
inline constexpr double kScaledTol = 1e-12;

struct MorphismOptions {
  int samples = 50;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
  double scale = kDefaultSampleScale;
  double delta = kPoleGuard;
  int max_attempt_factor = 10;
};

/// Harmonicity and horizontal conformality of the quotient at sampled points
/// off |Q| <= delta, the dual-path comparison of the quotient formulas, the
/// triple-equality criterion and an empirical non-constancy check. The
/// "-scaled" checks repeat tau, kappa and the dual path against the size of
/// the summed terms, which bounds what double precision can resolve.
VerificationReport verify_morphism(const RationalMorphism& m, const MorphismOptions& opt = {});

/// Same checks for an arbitrary quotient of fields on a group (negative
/// controls such as x_11 / x_22).
VerificationReport verify_quotient(const GroupDescriptor& group, const ScalarField& numerator,
                                   const ScalarField& denominator, const MorphismOptions& opt = {});

/// Imaginary-part signs of the morphism over sampled points.
struct SignCensus {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int skipped = 0;  // poles
};
SignCensus image_sign_census(const RationalMorphism& m, int samples, std::uint64_t seed,
                             double scale = kDefaultSampleScale, double delta = kPoleGuard);

/// Product laws for E1^k and E2^l: eigenvalues of the powers, the cross power
/// law kappa(Phi, Psi) = mu k l Phi Psi and the tau/kappa laws of products
/// Phi Psi. A plain eigenfamily is paired with itself (mu_cross = mu).
VerificationReport verify_appendix_lemmas(const Family& f, int k, int l, const VerifyOptions& opt = {});

/// The quotient (a + ib) / (c + id) of the degree-one family on SL(2,R), selector 4.3.
RationalMorphism example_sl2_morphism();

}  // namespace hmorph
