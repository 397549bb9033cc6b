#include "hmorph/linalg.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

namespace {

ComplexMatrix eye(int n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

TEST(Generators, UnitAndDiagonal) {
  const ComplexMatrix e = unit_matrix(3, 1, 2);
  EXPECT_EQ(e(0, 1), Complex(1.0));
  EXPECT_DOUBLE_EQ(e.cwiseAbs().sum(), 1.0);
  EXPECT_EQ(diag_generator(3, 2), unit_matrix(3, 2, 2));
}

TEST(Generators, SymmetricAndSkewAreUnitNorm) {
  for (int n = 2; n <= 5; ++n) {
    for (auto [r, s] : ordered_pairs(n)) {
      const ComplexMatrix x = sym_generator(n, r, s);
      const ComplexMatrix y = skew_generator(n, r, s);
      EXPECT_LT(max_abs(x - x.transpose()), 1e-15);
      EXPECT_LT(max_abs(y + y.transpose()), 1e-15);
      EXPECT_NEAR((x * x.transpose()).trace().real(), 1.0, 1e-15);
      EXPECT_NEAR((y * y.transpose()).trace().real(), 1.0, 1e-15);
    }
  }
}

// Direct sums of squares against closed forms: sum X^2 = (n-1)/2 I,
// sum Y^2 = -(n-1)/2 I, sum D^2 = I.
TEST(Generators, SumsOfSquares) {
  for (int n = 2; n <= 8; ++n) {
    ComplexMatrix sx = ComplexMatrix::Zero(n, n);
    ComplexMatrix sy = ComplexMatrix::Zero(n, n);
    ComplexMatrix sd = ComplexMatrix::Zero(n, n);
    for (auto [r, s] : ordered_pairs(n)) {
      sx += sym_generator(n, r, s) * sym_generator(n, r, s);
      sy += skew_generator(n, r, s) * skew_generator(n, r, s);
    }
    for (int t = 1; t <= n; ++t) sd += diag_generator(n, t) * diag_generator(n, t);
    EXPECT_LT(max_abs(sx - 0.5 * (n - 1) * eye(n)), 1e-14) << n;
    EXPECT_LT(max_abs(sy + 0.5 * (n - 1) * eye(n)), 1e-14) << n;
    EXPECT_LT(max_abs(sd - eye(n)), 1e-15) << n;
  }
}

TEST(Generators, SignatureAndSymplecticForms) {
  const ComplexMatrix ipq = signature_matrix(2, 1);
  EXPECT_EQ(ipq(0, 0), Complex(-1.0));
  EXPECT_EQ(ipq(2, 2), Complex(1.0));
  const ComplexMatrix j = symplectic_form(2);
  EXPECT_LT(max_abs(j * j + eye(4)), 1e-15);
  EXPECT_LT(max_abs(j.transpose() + j), 1e-15);
}

TEST(IndexSets, SplitAndChi) {
  const IndexSets s = index_sets(2, 3);
  EXPECT_EQ(s.n(), 5);
  EXPECT_EQ(s.chi(1), 1);
  EXPECT_EQ(s.chi(3), 0);
  EXPECT_EQ(s.lambda1().size(), 1u + 3u);
  EXPECT_EQ(s.lambda2().size(), 6u);
  EXPECT_EQ(ordered_pairs(4).size(), 6u);
}

TEST(BilinearDot, NoConjugation) {
  ComplexVector u(2);
  u << Complex(1, 0), Complex(0, 1);
  EXPECT_LT(std::abs(bilinear_dot(u, u)), 1e-15);
}

TEST(Identities, AllHoldExceptPrintedMixedForm) {
  for (int n = 2; n <= 8; ++n) {
    for (int p = 0; p <= n; ++p) {
      const IdentityReport r = check_identities(n, p, n - p);
      for (const auto& name : r.names()) {
        if (name == identity::kMixed) continue;
        EXPECT_EQ(r.max_exact_deviation(name), 0) << name << " n=" << n << " p=" << p;
        EXPECT_LE(r.max_float_deviation(name), 1e-14) << name << " n=" << n << " p=" << p;
      }
    }
  }
}

// The printed mixed identity carries the opposite sign on E_lj and a
// signature matrix in place of I_n on the diagonal; it differs from the
// corrected form for every signature.
TEST(Identities, PrintedMixedFormFails) {
  for (int n = 2; n <= 6; ++n) {
    for (int p = 0; p <= n; ++p) {
      const IdentityReport r = check_identities(0, p, n - p);
      EXPECT_GT(r.max_exact_deviation(identity::kMixed), 0) << "n=" << n << " p=" << p;
      EXPECT_EQ(r.max_exact_deviation(identity::kMixedCorrected), 0);
    }
  }
}

TEST(Identities, SkippedSetsAreEmpty) {
  const IdentityReport r = check_identities(0, 0, 0);
  EXPECT_TRUE(r.checks.empty());
}
