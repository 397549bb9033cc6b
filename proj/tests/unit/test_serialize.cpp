#include "hmorph/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hmorph;

TEST(Serialize, ComplexAndMatrix) {
  const Complex c(0.1, -1.0 / 3.0);
  EXPECT_EQ(complex_from_json(to_json(c)), c);
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(std::sqrt(2.0), 0), Complex(0, -0.25), Complex(1e-300, 7);
  EXPECT_EQ(matrix_from_json(Json::parse(dump(to_json(m)))), m);
  EXPECT_THROW(complex_from_json(Json::parse("[1]")), FormatError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[2,0]]]")), FormatError);
}

TEST(Serialize, FamilyRoundTripGivesIdenticalResiduals) {
  for (const auto& sel : family_selectors()) {
    const Family f = make_family(default_group_for(sel), sel);
    const Family back = family_from_json(Json::parse(dump(to_json(f))));
    EXPECT_EQ(family_group(back), family_group(f));
    EXPECT_EQ(family_provenance(back), family_provenance(f));
    VerifyOptions opt;
    opt.samples = 4;
    const auto a = verify_family(f, opt);
    const auto b = verify_family(back, opt);
    ASSERT_EQ(a.checks.size(), b.checks.size()) << sel;
    for (std::size_t k = 0; k < a.checks.size(); ++k) EXPECT_EQ(a.checks[k].residual, b.checks[k].residual) << sel;
  }
}

TEST(Serialize, MorphismRoundTrip) {
  const RationalMorphism m = example_sl2_morphism();
  const RationalMorphism back = morphism_from_json(Json::parse(dump(to_json(m))));
  EXPECT_EQ(back.numerator.terms, m.numerator.terms);
  EXPECT_EQ(back.denominator.terms, m.denominator.terms);
  MorphismOptions opt;
  opt.samples = 5;
  const auto a = verify_morphism(m, opt);
  const auto b = verify_morphism(back, opt);
  EXPECT_EQ(dump(strip_timing(to_json(a))), dump(strip_timing(to_json(b))));
}

TEST(Serialize, RejectsWrongFormat) {
  Json j = to_json(make_family(GroupDescriptor::parse("gl_r:2"), "4.2"));
  j["format"] = "something-else/1";
  EXPECT_THROW(family_from_json(j), FormatError);
  EXPECT_THROW(family_from_json(Json::object()), FormatError);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind":"mystery"})")), FormatError);
}

TEST(Serialize, ReportSeparatesTiming) {
  VerificationReport r;
  r.subject = "gl_r:2";
  r.add_check("a", 0.5, 1.0);
  r.add_check("b", std::nan(""), 1.0);
  r.wall_time_seconds = 1.25;
  const Json j = to_json(r);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_TRUE(j.contains("timing"));
  const Json s = strip_timing(j);
  EXPECT_FALSE(s.contains("timing"));
  r.wall_time_seconds = 9.0;
  EXPECT_EQ(dump(strip_timing(to_json(r))), dump(s));
  EXPECT_NE(dump(j).find("\"nan\""), std::string::npos);
}

TEST(Serialize, DumpIsIndentedWithNewline) {
  const std::string s = dump(Json{{"a", 1}});
  EXPECT_EQ(s, "{\n  \"a\": 1\n}\n");
}

TEST(Serialize, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "hmorph_serialize_test" / "nested";
  const auto path = dir / "f.json";
  write_text_file(path, dump(to_json(Complex(1, 2))));
  EXPECT_EQ(complex_from_json(read_json_file(path)), Complex(1, 2));
  EXPECT_THROW(read_json_file(dir / "missing.json"), std::runtime_error);
  std::filesystem::remove_all(dir.parent_path());
}
