#include "cli.hpp"

#include "hmorph/serialize.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace hmorph;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmorph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hmorph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(cli::parse_complex("1"), Complex(1, 0));
  EXPECT_EQ(cli::parse_complex("-0.5i"), Complex(0, -0.5));
  EXPECT_EQ(cli::parse_complex("2+3i"), Complex(2, 3));
  EXPECT_EQ(cli::parse_complex("1e-3-i"), Complex(1e-3, -1));
  EXPECT_EQ(cli::parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(cli::parse_complex(" 4 "), Complex(4, 0));
  EXPECT_ANY_THROW(cli::parse_complex("abc"));
  EXPECT_ANY_THROW(cli::parse_complex("1+"));
  EXPECT_ANY_THROW(cli::parse_complex(""));
}

TEST(ParseVector, Entries) {
  const ComplexVector v = cli::parse_vector("1,2i,-1+i");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v(2), Complex(-1, 1));
}

TEST(ParsePolynomial, TermsAndBlocks) {
  const MultiPoly p = cli::parse_polynomial("1,0:1;0,1:2i");
  EXPECT_EQ(p.vars1, 2);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.terms.at({0, 1}), Complex(0, 2));
  const MultiPoly b = cli::parse_polynomial("1,0|1:1;0,1|1:-1");
  EXPECT_EQ(b.vars2, 1);
  EXPECT_EQ(b.bidegree(), std::make_pair(1, 1));
  EXPECT_ANY_THROW(cli::parse_polynomial("1,0:1;1:1"));
  EXPECT_ANY_THROW(cli::parse_polynomial("1,0"));
}

TEST(Cli, VerifyLemmaPasses) {
  const CliRun r = run({"verify-lemma", "--group", "gl_r:3", "--lemma", "4.1", "--samples", "20", "--seed", "7",
                     "--tol", "1e-9"});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("samples").get<int>(), 20);
  EXPECT_EQ(j.at("command").get<std::string>(),
            "verify-lemma --group gl_r:3 --lemma 4.1 --samples 20 --seed 7 --tol 1e-9");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-lemma", "--group", "gl_r:x", "--lemma", "4.1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-lemma", "--group", "sp_r:2", "--lemma", "4.1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-lemma", "--lemma", "4.1", "--samples", "-3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-family"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-family", "--theorem", "6.2", "--v", "0,0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify-morphism", "--morphism-file", "/nonexistent/m.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitPass);
}

TEST(Cli, VerificationFailureExitsOne) {
  const CliRun r = run({"verify-lemma", "--group", "so_pq:2,2", "--lemma", "11.1"});
  EXPECT_EQ(r.code, cli::kExitFail);
  EXPECT_FALSE(Json::parse(r.out).at("pass").get<bool>());
  EXPECT_NE(r.err.find("kappa-x-x"), std::string::npos);
}

TEST(Cli, CheckIdentitiesReportsPrintedMixedForm) {
  const CliRun r = run({"check-identities", "--n", "5", "--p", "3", "--q", "2"});
  EXPECT_EQ(r.code, cli::kExitFail);
  const Json j = Json::parse(r.out);
  for (const auto& c : j.at("checks")) {
    const auto name = c.at("name").get<std::string>();
    if (name.rfind("mixed-xyd/", 0) == 0 || name == "mixed-xyd") continue;
    EXPECT_TRUE(c.at("pass").get<bool>()) << name;
  }
}

TEST_F(CliFiles, FamilyRoundTrip) {
  ASSERT_EQ(run({"make-family", "--theorem", "10.2", "--group", "u_pq:2,1", "--out", path("f.json")}).code, 0);
  const CliRun from_file = run({"verify-family", "--family-file", path("f.json"), "--samples", "5"});
  const CliRun direct = run({"verify-family", "--theorem", "10.2", "--group", "u_pq:2,1", "--samples", "5"});
  EXPECT_EQ(from_file.code, 0) << from_file.err;
  Json a = strip_timing(Json::parse(from_file.out));
  Json b = strip_timing(Json::parse(direct.out));
  a.erase("command");
  b.erase("command");
  EXPECT_EQ(dump(a), dump(b));
}

TEST_F(CliFiles, ExampleMorphismFromFile) {
  ASSERT_EQ(run({"make-morphism", "--example", "sl2", "--out", path("m.json")}).code, 0);
  const CliRun r = run({"verify-morphism", "--morphism-file", path("m.json"), "--tol", "1e-10", "--samples", "100"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliFiles, MorphismFromTerms) {
  ASSERT_EQ(run({"make-family", "--theorem", "6.2", "--group", "sp_r:2", "--out", path("f.json")}).code, 0);
  const Json f = read_json_file(path("f.json"));
  const auto gens = f.at("generators").size();
  ASSERT_GE(gens, 2u);
  std::string e1, e2;
  for (std::size_t k = 0; k < gens; ++k) {
    e1 += (k ? "," : "") + std::string(k == 0 ? "1" : "0");
    e2 += (k ? "," : "") + std::string(k == 1 ? "1" : "0");
  }
  const CliRun r = run({"verify-morphism", "--family-file", path("f.json"), "--numerator", e1 + ":1", "--denominator",
                     e2 + ":1+i", "--samples", "10"});
  EXPECT_EQ(r.code, 0) << r.err;
  const CliRun bad = run({"verify-morphism", "--family-file", path("f.json"), "--numerator", e1 + ":1",
                       "--denominator", e1 + ":2"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
}

TEST_F(CliFiles, DualizeAndVerify) {
  ASSERT_EQ(run({"make-family", "--theorem", "6.2", "--out", path("f.json")}).code, 0);
  ASSERT_EQ(run({"dualize", "--family-file", path("f.json"), "--out", path("d.json")}).code, 0);
  EXPECT_EQ(run({"verify-dual", "--family-file", path("d.json"), "--samples", "5"}).code, 0);
  EXPECT_EQ(run({"verify-dual", "--family-file", path("f.json"), "--samples", "5"}).code, 0);
}

TEST_F(CliFiles, OutputDirectoryFromEnvironment) {
  ::setenv(cli::kOutDirEnv, dir_.c_str(), 1);
  const CliRun r = run({"basis", "--group", "sp_r:1", "--dual"});
  ::unsetenv(cli::kOutDirEnv);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = read_json_file(path("basis_dual_sp_r_1.json"));
  EXPECT_EQ(j.at("dimension").get<int>(), 3);
  EXPECT_EQ(j.at("sign_diagnostic").size(), 3u);
}

TEST(Cli, IdenticalFlagsGiveIdenticalBodies) {
  const std::vector<std::string> args{"verify-family", "--theorem", "12.2", "--group", "sp_pq:1,1", "--samples", "4"};
  EXPECT_EQ(dump(strip_timing(Json::parse(run(args).out))), dump(strip_timing(Json::parse(run(args).out))));
}
