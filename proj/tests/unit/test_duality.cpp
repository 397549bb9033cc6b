#include "hmorph/duality.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

TEST(Duality, DescriptorAndBasis) {
  const auto src = GroupDescriptor::parse("sp_r:2");
  const auto d = dual_descriptor(src);
  EXPECT_TRUE(d.is_dual());
  EXPECT_EQ(d.source_descriptor(), src);
  EXPECT_EQ(GroupDescriptor::parse(d.to_string()), d);
  const SignedBasis b = dual_basis(src);
  EXPECT_EQ(b.size(), algebra_basis(src).size());
  // Re trace(ZZ) is negative on the whole compact algebra, so it reproduces
  // the structural sign on k and contradicts it on ip.
  for (const auto& row : metric_sign_diagnostic(src)) {
    EXPECT_LT(row.trace_form, 0.0) << row.label;
    EXPECT_EQ(row.agree(), row.structural == -1) << row.label;
  }
}

TEST(Duality, DualPointsAreMembers) {
  for (const char* s : {"sl_r:3", "sp_r:2", "so_star:3", "u_pq:2,1", "so_pq:2,2", "sp_pq:1,1"}) {
    const auto d = dual_descriptor(GroupDescriptor::parse(s));
    for (const auto& pt : sample_points(d, 5, 7)) EXPECT_LE(membership_residual(pt), 1e-10) << s;
  }
}

TEST(Duality, ConstantsFlipSign) {
  const Family f = make_family(GroupDescriptor::parse("u_pq:2,1"), "10.2");
  const Family d = dualize(f);
  const auto& pf = std::get<BiEigenFamily>(f);
  const auto& pd = std::get<BiEigenFamily>(d);
  EXPECT_EQ(pd.first.lambda, -pf.first.lambda);
  EXPECT_EQ(pd.second.mu, -pf.second.mu);
  EXPECT_EQ(*pd.mu_cross, -*pf.mu_cross);
  EXPECT_TRUE(family_group(d).is_dual());
}

TEST(Duality, DualizingTwiceIsIdentity) {
  const Family f = make_family(GroupDescriptor::parse("sp_r:2"), "6.2");
  const Family back = dualize(dualize(f));
  const auto& a = std::get<EigenFamily>(f);
  const auto& b = std::get<EigenFamily>(back);
  EXPECT_EQ(a.group, b.group);
  EXPECT_EQ(a.provenance, b.provenance);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.mu, b.mu);
}

TEST(Duality, EveryDualFamilyVerifies) {
  for (const auto& sel : family_selectors()) {
    const auto r = verify_dual(dualize(make_family(default_group_for(sel), sel)));
    EXPECT_TRUE(r.pass()) << sel << " max " << r.max_residual();
  }
}
