#include "hmorph/lemmas.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

TEST(Lemmas, SelectorsAndDefaults) {
  const auto sels = lemma_selectors();
  EXPECT_EQ(sels.size(), 7u);
  for (const auto& s : sels) EXPECT_EQ(default_group_for_lemma(s).source, lemma_family(s)) << s;
  EXPECT_THROW(lemma_family("4.2"), std::invalid_argument);
}

TEST(Lemmas, GeneralLinearDefault) {
  VerifyOptions opt;
  opt.samples = 20;
  opt.tol = 1e-9;
  const auto r = verify_lemma(GroupDescriptor::parse("gl_r:3"), "4.1", opt);
  EXPECT_TRUE(r.pass()) << r.max_residual();
  EXPECT_EQ(r.samples, 20);
  EXPECT_EQ(r.seed, 7u);
}

// Ten displayed relations: every unordered pair of the x, y, z, w blocks.
TEST(Lemmas, SymplecticKappaRelations) {
  const auto r = verify_lemma(GroupDescriptor::parse("sp_r:2"), "6.1");
  int kappas = 0;
  for (const auto& c : r.checks) kappas += c.name.rfind("kappa-", 0) == 0 ? 1 : 0;
  EXPECT_EQ(kappas, 10);
  EXPECT_TRUE(r.pass());
}

TEST(Lemmas, AllExceptOrthogonalSignaturePass) {
  for (const auto& sel : lemma_selectors()) {
    if (sel == "11.1") continue;
    for (const auto& g : lemma_battery_groups(sel, 4)) {
      const auto r = verify_lemma(g, sel);
      EXPECT_TRUE(r.pass()) << sel << " on " << g.to_string() << " max " << r.max_residual();
    }
  }
}

// The printed kappa relation for the x coordinates of SO(p,q) splits the
// sum over t by index block with opposite signs; the relation that holds
// sums over all t with one sign.
TEST(Lemmas, OrthogonalSignatureKappaCorrected) {
  const auto r = verify_lemma(GroupDescriptor::parse("so_pq:2,2"), "11.1");
  const Check* printed = r.find_check("kappa-x-x");
  const Check* corrected = r.find_check("kappa-x-x-corrected");
  ASSERT_NE(printed, nullptr);
  ASSERT_NE(corrected, nullptr);
  EXPECT_GT(printed->residual, 1e-2);
  EXPECT_LE(corrected->residual, 1e-9);
  for (const auto& c : r.checks)
    if (c.name != "kappa-x-x") EXPECT_TRUE(c.pass()) << c.name << " " << c.residual;
}

TEST(Lemmas, WrongGroupRejected) {
  EXPECT_THROW(verify_lemma(GroupDescriptor::parse("sp_r:2"), "4.1"), std::invalid_argument);
  EXPECT_THROW(verify_lemma(GroupDescriptor::parse("gl_r:2"), "13.1"), std::invalid_argument);
}

TEST(Lemmas, BatteryRespectsSizeCap) {
  for (const auto& sel : lemma_selectors())
    for (const auto& g : lemma_battery_groups(sel, 6)) EXPECT_LE(g.matrix_size(), 6) << sel;
}
