#include "hmorph/calculus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hmorph;

namespace {

const GroupDescriptor kGl3 = GroupDescriptor::parse("gl_r:3");

ScalarField x(int i, int j) { return coordinate_field(kGl3, Block::Full, i, j); }

ComplexMatrix direction(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = u(rng);
  return z;
}

}  // namespace

TEST(Jets, CoordinateClosedForm) {
  const GroupPoint p = sample_point(kGl3, 11);
  const ComplexMatrix z = direction(3, 3);
  const Jet2 j = jet_eval(x(2, 3), p, z);
  const ComplexMatrix gz = p.matrix * z;
  const ComplexMatrix gzz = gz * z;
  EXPECT_LT(std::abs(j.value - p.matrix(1, 2)), 1e-15);
  EXPECT_LT(std::abs(j.d1 - gz(1, 2)), 1e-14);
  EXPECT_LT(std::abs(j.d2 - gzz(1, 2)), 1e-14);
}

// (fh)'' = f''h + 2f'h' + fh''.
TEST(Jets, ProductRule) {
  const Jet2 f{Complex(2, 1), Complex(-1, 0.5), Complex(3, 0)};
  const Jet2 h{Complex(0.5, 0), Complex(0, 2), Complex(1, -1)};
  const Jet2 fh = f * h;
  EXPECT_LT(std::abs(fh.value - f.value * h.value), 1e-15);
  EXPECT_LT(std::abs(fh.d1 - (f.d1 * h.value + f.value * h.d1)), 1e-15);
  EXPECT_LT(std::abs(fh.d2 - (f.d2 * h.value + 2.0 * f.d1 * h.d1 + f.value * h.d2)), 1e-14);
}

// (1/h)' = -h'/h^2, (1/h)'' = 2h'^2/h^3 - h''/h^2.
TEST(Jets, QuotientRule) {
  const Jet2 one{Complex(1), Complex(0), Complex(0)};
  const Jet2 h{Complex(0.5, 0.25), Complex(0, 2), Complex(1, -1)};
  const Jet2 r = divide(one, h);
  EXPECT_LT(std::abs(r.d1 + h.d1 / (h.value * h.value)), 1e-13);
  EXPECT_LT(std::abs(r.d2 - (2.0 * h.d1 * h.d1 / std::pow(h.value, 3) - h.d2 / (h.value * h.value))), 1e-12);
  const Jet2 tiny{Complex(1e-7), Complex(1), Complex(0)};
  EXPECT_THROW(divide(one, tiny), PoleError);
}

// On GL(n,R) with the unit-matrix basis: tau(x_ij) = x_ij and
// kappa(x_ij, x_kl) = delta_jl (g g^t)_ik.
TEST(TensionKappa, GeneralLinearCoordinates) {
  const SignedBasis b = algebra_basis(kGl3);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GroupPoint p = sample_point(kGl3, derive_seed(21, s));
    const ComplexMatrix ggt = p.matrix * p.matrix.transpose();
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        EXPECT_LT(relative_residual(tension(x(i, j), p, b), p.matrix(i - 1, j - 1)), 1e-13);
        for (int k = 1; k <= 3; ++k) {
          for (int l = 1; l <= 3; ++l) {
            const Complex expect = j == l ? ggt(i - 1, k - 1) : Complex(0);
            EXPECT_LT(relative_residual(kappa(x(i, j), x(k, l), p, b), expect), 1e-13);
          }
        }
      }
    }
  }
}

TEST(TensionKappa, KappaSymmetricAndBilinear) {
  const GroupDescriptor g = GroupDescriptor::parse("sp_r:2");
  const SignedBasis b = algebra_basis(g);
  const GroupPoint p = sample_point(g, 5);
  const ScalarField f = coordinate_field(g, "x", 1, 2) * coordinate_field(g, "w", 2, 1);
  const ScalarField h = coordinate_field(g, "y", 1, 1);
  const ScalarField k = coordinate_field(g, "z", 2, 2) + Complex(3.0) * h;
  const Complex a(0.3, -1.2);
  EXPECT_LT(std::abs(kappa(f, h, p, b) - kappa(h, f, p, b)), 1e-13);
  const Complex lhs = kappa(f, a * h + k, p, b);
  const Complex rhs = a * kappa(f, h, p, b) + kappa(f, k, p, b);
  EXPECT_LT(relative_residual(lhs, rhs), 1e-13);
  EXPECT_LT(relative_residual(tension(a * f + k, p, b), a * tension(f, p, b) + tension(k, p, b)), 1e-13);
}

// tau(fh) = tau(f) h + 2 kappa(f,h) + f tau(h).
TEST(TensionKappa, ProductLaw) {
  const GroupDescriptor g = GroupDescriptor::parse("u_pq:2,1");
  const SignedBasis b = metric_basis(g);
  const GroupPoint p = sample_point(g, 9);
  const ScalarField f = coordinate_field(g, "z", 1, 3);
  const ScalarField h = coordinate_field(g, "z", 2, 2);
  const Complex lhs = tension(f * h, p, b);
  const Complex rhs = tension(f, p, b) * evaluate(h, p.matrix) + 2.0 * kappa(f, h, p, b) +
                      evaluate(f, p.matrix) * tension(h, p, b);
  EXPECT_LT(relative_residual(lhs, rhs), 1e-12);
}

TEST(Oracle, FiniteDifferencesAgree) {
  const GroupDescriptor g = GroupDescriptor::parse("so_star:2");
  const GroupPoint p = sample_point(g, 4);
  const SignedBasis b = algebra_basis(g);
  const ScalarField f = coordinate_field(g, "z", 1, 2) * coordinate_field(g, "w", 2, 1) /
                        (coordinate_field(g, "z", 1, 1) + ScalarField::constant(2.0));
  for (std::size_t k = 0; k < b.size(); k += 3) {
    const Jet2 exact = jet_eval(f, p, b.elements[k]);
    const Jet2 fd = fd_oracle(f, p, b.elements[k]);
    EXPECT_LT(relative_residual(fd.d1, exact.d1), 1e-5);
    EXPECT_LT(relative_residual(fd.d2, exact.d2), 1e-5);
  }
}

TEST(Fields, SharedSubtreesCountedOnce) {
  const ScalarField f = x(1, 1) + x(2, 2);
  const ScalarField g = f * f;
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_THROW(x(1, 1) / ScalarField::constant(0.0), std::invalid_argument);
}

TEST(Fields, ProgramMatchesTreeEvaluation) {
  const GroupPoint p = sample_point(kGl3, 2);
  const ScalarField f = (x(1, 2) * x(3, 3) - Complex(0, 2) * x(2, 1)) / (x(1, 1) + ScalarField::constant(4.0));
  const FieldProgram prog(f);
  EXPECT_EQ(prog.value(p.matrix), evaluate(f, p.matrix));
}

TEST(Residuals, Definitions) {
  EXPECT_DOUBLE_EQ(relative_residual(Complex(1.5), Complex(1.0)), 0.5);
  EXPECT_DOUBLE_EQ(relative_residual(Complex(21.0), Complex(20.0)), 0.05);
  EXPECT_DOUBLE_EQ(scaled_residual(Complex(1e-6), Complex(0.0), 1e6), 1e-12);
  const std::vector<Jet2> a{{0, 1, 2}, {0, -3, -4}};
  EXPECT_DOUBLE_EQ(tension_scale(a), 6.0);
  EXPECT_DOUBLE_EQ(kappa_scale(a, a), 10.0);
  EXPECT_EQ(tension_from(a, {1, 1}), Complex(-2.0));
  EXPECT_EQ(tension_from(a, {1, -1}), Complex(6.0));
}
