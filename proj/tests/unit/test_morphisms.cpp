#include "hmorph/morphisms.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

namespace {

MultiPoly linear(int vars, int which, Complex c = 1.0) {
  MultiPoly p;
  p.vars1 = vars;
  std::vector<int> e(vars, 0);
  e[which] = 1;
  p.add(e, c);
  return p;
}

const GroupDescriptor kGl2 = GroupDescriptor::parse("gl_r:2");

}  // namespace

TEST(Polynomials, Degrees) {
  MultiPoly p;
  p.vars1 = 2;
  p.vars2 = 1;
  p.add({2, 0, 1}, 1.0);
  p.add({1, 1, 1}, Complex(0, 1));
  EXPECT_EQ(p.bidegree(), std::make_pair(2, 1));
  EXPECT_EQ(p.degree(), 3);
  p.add({0, 0, 3}, 1.0);
  EXPECT_THROW(p.bidegree(), std::invalid_argument);
  EXPECT_THROW(p.add({1, 1}, 1.0), std::invalid_argument);
  EXPECT_THROW(MultiPoly{}.degree(), std::invalid_argument);
}

TEST(Polynomials, RandomAreHomogeneous) {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 3; ++d) {
    const MultiPoly p = random_homogeneous(3, d, rng);
    EXPECT_EQ(p.degree(), d);
    EXPECT_LE(p.terms.size(), 4u);
    const MultiPoly b = random_bihomogeneous(2, 2, d, 1, rng);
    EXPECT_EQ(b.bidegree(), std::make_pair(d, 1));
  }
}

TEST(Morphisms, ExampleSpecialLinearPasses) {
  const RationalMorphism m = example_sl2_morphism();
  MorphismOptions opt;
  opt.samples = 100;
  opt.tol = 1e-10;
  const auto r = verify_morphism(m, opt);
  EXPECT_TRUE(r.pass()) << r.max_residual();
  const SignCensus s = image_sign_census(m, 100, 7);
  EXPECT_TRUE(s.positive == 0 || s.negative == 0);
  EXPECT_EQ(s.zero, 0);
}

TEST(Morphisms, BuildValidates) {
  const Family f = make_family(GroupDescriptor::parse("gl_r:4"), "4.2");
  const int vars = static_cast<int>(family_generators(f).size());
  ASSERT_GE(vars, 2);
  EXPECT_NO_THROW(build_morphism(f, linear(vars, 0), linear(vars, 1)));
  // proportional numerator and denominator
  EXPECT_THROW(build_morphism(f, linear(vars, 0, 2.0), linear(vars, 0)), std::invalid_argument);
  MultiPoly quad;
  quad.vars1 = vars;
  std::vector<int> e(vars, 0);
  e[0] = 2;
  quad.add(e, 1.0);
  EXPECT_THROW(build_morphism(f, quad, linear(vars, 1)), std::invalid_argument);
  MultiPoly zero;
  zero.vars1 = vars;
  EXPECT_THROW(build_morphism(f, zero, linear(vars, 1)), std::invalid_argument);
  EXPECT_THROW(build_morphism(f, linear(vars + 1, 0), linear(vars + 1, 1)), std::invalid_argument);
}

TEST(Morphisms, PairWithoutCrossConstantRejected) {
  const Family f = make_family(GroupDescriptor::parse("so_star:3"), "8.3");
  std::mt19937_64 rng(1);
  const auto& b = std::get<BiEigenFamily>(f);
  const int v1 = static_cast<int>(b.first.generators.size());
  const int v2 = static_cast<int>(b.second.generators.size());
  EXPECT_THROW(build_morphism(f, random_bihomogeneous(v1, v2, 1, 1, rng), random_bihomogeneous(v1, v2, 1, 1, rng)),
               std::invalid_argument);
}

TEST(Morphisms, BirationalOnUnitarySignature) {
  const Family f = make_family(GroupDescriptor::parse("u_pq:2,1"), "10.2");
  const auto& b = std::get<BiEigenFamily>(f);
  std::mt19937_64 rng(3);
  const auto num = random_bihomogeneous(int(b.first.generators.size()), int(b.second.generators.size()), 1, 1, rng);
  const auto den = random_bihomogeneous(int(b.first.generators.size()), int(b.second.generators.size()), 1, 1, rng);
  const auto r = verify_morphism(build_morphism(f, num, den));
  EXPECT_TRUE(r.pass()) << r.max_residual();
}

// Q^2 kappa(P,P) = PQ kappa(P,Q) = P^2 kappa(Q,Q) fails for x11 / x22.
TEST(Morphisms, NegativeControlViolatesTripleEquality) {
  const ScalarField p = coordinate_field(kGl2, Block::Full, 1, 1);
  const ScalarField q = coordinate_field(kGl2, Block::Full, 2, 2);
  const auto r = verify_quotient(kGl2, p, q);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.find_check("triple-equality")->residual, 1e-3);
  EXPECT_GT(r.find_check("kappa")->residual, 1e-3);
  EXPECT_LE(r.find_check("dual-path-scaled")->residual, kScaledTol);
}

// For P/Q the quotient formulas and the jets of the quotient field agree.
TEST(Morphisms, QuotientFormulasMatchDirectJets) {
  const GroupDescriptor g = GroupDescriptor::parse("sp_r:2");
  const SignedBasis b = metric_basis(g);
  const ScalarField p = coordinate_field(g, "x", 1, 2) + Complex(0, 1) * coordinate_field(g, "w", 2, 2);
  const ScalarField q = coordinate_field(g, "y", 1, 1) * coordinate_field(g, "z", 2, 1) + ScalarField::constant(1.5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = quotient_tau_kappa(p, q, sample_point(g, derive_seed(5, s)), b);
    EXPECT_LE(scaled_residual(r.tau, r.tau_direct, r.tau_scale), kScaledTol);
    EXPECT_LE(scaled_residual(r.kappa, r.kappa_direct, r.kappa_scale), kScaledTol);
  }
}

TEST(Morphisms, AppendixProductLaws) {
  for (const char* sel : {"4.2", "6.2", "10.2"}) {
    const Family f = make_family(default_group_for(sel), sel);
    for (int k = 1; k <= 2; ++k) {
      const auto r = verify_appendix_lemmas(f, k, 3 - k);
      for (const auto& c : r.checks)
        if (c.name.ends_with("-scaled")) EXPECT_TRUE(c.pass()) << sel << " " << c.name << " " << c.residual;
    }
  }
}

TEST(Morphisms, SamplingSkipsPoles) {
  const ScalarField p = coordinate_field(kGl2, Block::Full, 1, 2);
  const ScalarField q = coordinate_field(kGl2, Block::Full, 2, 1);
  MorphismOptions opt;
  opt.samples = 10;
  opt.delta = 0.05;
  const auto r = verify_quotient(kGl2, p, q, opt);
  EXPECT_GT(r.resampled, 0);
  EXPECT_EQ(r.find_check("points-shortfall")->residual, 0.0);
}
