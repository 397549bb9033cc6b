#include "hmorph/families.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

namespace {

Complex constant(const VerificationReport& r, const std::string& name) {
  const MeasuredConstant* c = r.find_constant(name);
  EXPECT_NE(c, nullptr) << name;
  return c ? c->value : Complex(std::nan(""));
}

}  // namespace

TEST(Isotropy, MaximalSubspace) {
  for (int n = 2; n <= 7; ++n) {
    const auto v = max_isotropic_subspace(n);
    EXPECT_EQ(static_cast<int>(v.size()), n / 2);
    EXPECT_LT(isotropy_defect(v), kIsotropyTol);
  }
}

TEST(Families, EveryConstructorPasses) {
  for (const auto& sel : family_selectors()) {
    const GroupDescriptor g = default_group_for(sel);
    const VerificationReport r = verify_family(make_family(g, sel));
    EXPECT_TRUE(r.pass()) << sel << " on " << g.to_string() << " max " << r.max_residual();
  }
}

TEST(Families, GeneralLinearConstants) {
  const auto r = verify_family(make_family(GroupDescriptor::parse("gl_r:3"), "4.2"));
  EXPECT_LT(std::abs(constant(r, "lambda") - 1.0), 1e-8);
  EXPECT_LT(std::abs(constant(r, "mu")), 1e-8);
}

TEST(Families, SpecialLinearExampleConstants) {
  const auto r = verify_family(make_family(GroupDescriptor::parse("sl_r:2"), "4.3"));
  EXPECT_LT(std::abs(constant(r, "lambda") - 0.5), 1e-8);
  EXPECT_LT(std::abs(constant(r, "mu") + 0.5), 1e-8);
}

TEST(Families, QuaternionicConstants) {
  for (const char* sel : {"5.2", "5.3", "5.4"}) {
    const auto r = verify_family(make_family(GroupDescriptor::parse("u_star:2"), sel));
    EXPECT_LT(std::abs(constant(r, "lambda") + 1.0), 1e-8) << sel;
    EXPECT_LT(std::abs(constant(r, "mu")), 1e-8) << sel;
  }
}

TEST(Families, UnitarySignatureConstants) {
  const auto g = GroupDescriptor::parse("u_pq:3,1");
  const auto r = verify_family(make_family(g, "10.2"));
  EXPECT_TRUE(r.pass());
  EXPECT_LT(std::abs(constant(r, "lambda-1") - Complex(-2.0)), 1e-8);
  EXPECT_LT(std::abs(constant(r, "lambda-2") - Complex(2.0)), 1e-8);
  EXPECT_LT(std::abs(constant(r, "mu-1") + 1.0), 1e-8);
  EXPECT_LT(std::abs(constant(r, "mu-cross") - 1.0), 1e-8);
}

TEST(Families, OrthogonalSignatureConstants) {
  const auto g = GroupDescriptor::parse("so_pq:3,2");
  const auto r = verify_family(make_family(g, "11.2"));
  EXPECT_TRUE(r.pass());
  EXPECT_LT(std::abs(constant(r, "lambda-1") - 0.0), 1e-8);
  EXPECT_LT(std::abs(constant(r, "lambda-2") - 1.0), 1e-8);
  EXPECT_LT(std::abs(constant(r, "mu-cross") - 0.5), 1e-8);
}

TEST(Families, InvalidParametersThrow) {
  const auto gl = GroupDescriptor::parse("gl_r:3");
  FamilyParams zero;
  zero.v = ComplexVector::Zero(4);
  EXPECT_THROW(make_family(GroupDescriptor::parse("sp_r:2"), "6.2", zero), std::invalid_argument);
  FamilyParams wrong;
  wrong.v = ComplexVector::Ones(5);
  EXPECT_THROW(make_family(GroupDescriptor::parse("sp_r:2"), "6.2", wrong), std::invalid_argument);
  FamilyParams not_isotropic;
  not_isotropic.isotropic = {ComplexVector::Ones(3)};
  EXPECT_THROW(make_family(gl, "4.2", not_isotropic), std::invalid_argument);
  EXPECT_THROW(make_family(gl, "5.2"), std::invalid_argument);
  EXPECT_THROW(make_family(gl, "9.9"), std::invalid_argument);
}

TEST(Families, RestrictionShiftsConstants) {
  const EigenFamily f = family_glr(2, max_isotropic_subspace(2));
  const EigenFamily s = restrict_to_special(f);
  EXPECT_LT(std::abs(s.lambda - (f.lambda - 0.5)), 1e-15);
  EXPECT_LT(std::abs(s.mu - (f.mu - 0.5)), 1e-15);
}

TEST(Families, VerificationIsReproducible) {
  const Family f = make_family(GroupDescriptor::parse("sp_pq:1,1"), "12.2");
  const auto a = verify_family(f);
  const auto b = verify_family(f);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) EXPECT_EQ(a.checks[k].residual, b.checks[k].residual);
}

// A family that does not satisfy its claimed constants fails.
TEST(Families, WrongConstantsFail) {
  EigenFamily f = std::get<EigenFamily>(make_family(GroupDescriptor::parse("gl_r:2"), "4.2"));
  f.lambda = 2.0;
  EXPECT_FALSE(verify_family(f).pass());
}
