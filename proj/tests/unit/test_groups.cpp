#include "hmorph/duality.hpp"
#include "hmorph/groups.hpp"

#include <gtest/gtest.h>

using namespace hmorph;

namespace {

struct DimCase {
  const char* group;
  int dimension;
};

const DimCase kDims[] = {
    {"gl_r:3", 9},   {"sl_r:3", 8},     {"u_star:2", 16},   {"su_star:2", 15}, {"sp_r:2", 10},
    {"so_star:3", 15}, {"u_pq:2,1", 9}, {"so_pq:2,2", 6},   {"sp_pq:2,1", 21}, {"sp_pq:1,1", 10},
};

std::vector<GroupDescriptor> all_groups() {
  std::vector<GroupDescriptor> out;
  for (const char* s : {"gl_r:2", "gl_r:4", "sl_r:2", "sl_r:3", "u_star:1", "u_star:3", "su_star:2", "sp_r:1",
                        "sp_r:3", "so_star:2", "so_star:3", "u_pq:1,1", "u_pq:2,2", "u_pq:3,1", "so_pq:2,1",
                        "so_pq:3,2", "sp_pq:1,1", "sp_pq:1,2"})
    out.push_back(GroupDescriptor::parse(s));
  return out;
}

}  // namespace

TEST(Descriptor, ParseRoundTrip) {
  for (const auto& g : all_groups()) EXPECT_EQ(GroupDescriptor::parse(g.to_string()), g) << g.to_string();
  const auto g = GroupDescriptor::parse("u_pq:2,1");
  EXPECT_EQ(g.p, 2);
  EXPECT_EQ(g.q, 1);
  EXPECT_EQ(g.matrix_size(), 3);
  EXPECT_EQ(GroupDescriptor::parse("sp_pq:1,2").matrix_size(), 6);
  EXPECT_EQ(GroupDescriptor::parse("u_star:2").matrix_size(), 4);
}

TEST(Descriptor, MalformedStringsThrow) {
  for (const char* s : {"", "gl_r", "gl_r:", "gl_r:x", "gl_r:0", "u_pq:2", "foo:3", "so_pq:2,-1", "gl_r:3,1"})
    EXPECT_THROW(GroupDescriptor::parse(s), std::invalid_argument) << s;
}

TEST(Basis, Dimensions) {
  for (const auto& c : kDims) {
    const auto g = GroupDescriptor::parse(c.group);
    EXPECT_EQ(static_cast<int>(algebra_basis(g).size()), c.dimension) << c.group;
    EXPECT_EQ(algebra_dimension(g), c.dimension) << c.group;
  }
}

TEST(Basis, OrthonormalInsideAlgebra) {
  for (const auto& g : all_groups()) {
    const BasisReport r = verify_basis(g);
    EXPECT_TRUE(r.pass()) << g.to_string() << " orth " << r.orthonormality_deviation << " alg "
                          << r.algebra_deviation;
    EXPECT_EQ(r.count, r.expected_dimension);
  }
}

TEST(Basis, DualBasesPass) {
  for (const auto& g : all_groups()) {
    const BasisReport r = verify_basis(dual_descriptor(g));
    EXPECT_TRUE(r.pass()) << g.to_string() << " sign " << r.sign_deviation;
  }
}

// gl(n,R): X_rs, Y_rs and D_t, all with sign +1.
TEST(Basis, GeneralLinearGenerators) {
  const SignedBasis b = algebra_basis(GroupDescriptor::parse("gl_r:2"));
  ASSERT_EQ(b.size(), 4u);
  ComplexMatrix gram(4, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_EQ(b.signs[a], 1);
    for (std::size_t c = 0; c < 4; ++c) gram(a, c) = (b.elements[a] * b.elements[c].adjoint()).trace();
  }
  EXPECT_LT(max_abs(gram - ComplexMatrix::Identity(4, 4)), 1e-15);
}

TEST(Sampling, PointsAreMembers) {
  for (const auto& g : all_groups()) {
    for (const auto& pt : sample_points(g, 5, 7)) EXPECT_LE(membership_residual(pt), 1e-10) << g.to_string();
  }
}

TEST(Sampling, DeterministicPerSeed) {
  const auto g = GroupDescriptor::parse("sp_r:2");
  const auto a = sample_point(g, derive_seed(7, 3));
  const auto b = sample_point(g, derive_seed(7, 3));
  const auto c = sample_point(g, derive_seed(7, 4));
  EXPECT_EQ(max_abs(a.matrix - b.matrix), 0.0);
  EXPECT_GT(max_abs(a.matrix - c.matrix), 0.0);
  EXPECT_NE(derive_seed(7, 0), derive_seed(8, 0));
}

TEST(Membership, DetectsNonMembers) {
  const auto g = GroupDescriptor::parse("sl_r:2");
  GroupPoint pt{g, ComplexMatrix::Identity(2, 2) * 2.0};
  EXPECT_GT(membership_residual(pt), 1.0);
  const auto so = GroupDescriptor::parse("so_pq:1,1");
  GroupPoint rot{so, ComplexMatrix::Identity(2, 2)};
  EXPECT_LT(membership_residual(rot), 1e-15);
}

TEST(Exponential, MatchesClosedForm) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  const ComplexMatrix e = matrix_exp(0.7 * a);
  EXPECT_NEAR(e(0, 0).real(), std::cos(0.7), 1e-15);
  EXPECT_NEAR(e(1, 0).real(), std::sin(0.7), 1e-15);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 1e6;
  EXPECT_THROW(matrix_exp(bad), ExponentialError);
}

TEST(Blocks, CoordinateNames) {
  EXPECT_EQ(coordinate_block(GroupDescriptor::parse("gl_r:3"), "x"), Block::Full);
  EXPECT_EQ(coordinate_block(GroupDescriptor::parse("u_star:2"), "w"), Block::TopRight);
  EXPECT_EQ(coordinate_block(GroupDescriptor::parse("sp_r:2"), "y"), Block::TopRight);
  EXPECT_EQ(parse_block(block_name(Block::BottomLeft)), Block::BottomLeft);
}
