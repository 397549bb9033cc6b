#pragma once

#include "hmorph/groups.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace hmorph {

inline constexpr double kPoleGuard = 1e-6;

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value, first and second derivative of s -> f(p exp(sZ)) at s = 0.
struct Jet2 {
  Complex value{0.0, 0.0};
  Complex d1{0.0, 0.0};
  Complex d2{0.0, 0.0};
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(Complex c, const Jet2& a);
// Truncated division; throws PoleError when |b.value| < guard.
Jet2 divide(const Jet2& a, const Jet2& b, double guard = kPoleGuard);

enum class FieldKind { Constant, TraceForm, Sum, Product, Scale, Quotient };

/// One term trace(A * block(g)^t) = sum_ij A_ij block(g)_ij.
struct TraceTerm {
  ComplexMatrix coefficient;
  Block block = Block::Full;
};

/// Immutable expression tree of complex functions on a matrix group. Copies
/// share structure.
class ScalarField {
 public:
  ScalarField();  // the zero constant

  static ScalarField constant(Complex c);
  /// Linear field sum_k trace(A_k block_k(g)^t) on ambient matrices of the
  /// given size. Quadrant blocks need an even ambient size.
  static ScalarField trace_form(std::vector<TraceTerm> terms, int ambient_size);
  static ScalarField sum(std::vector<ScalarField> terms);
  static ScalarField product(std::vector<ScalarField> factors);
  static ScalarField scale(Complex c, const ScalarField& f);
  /// Throws std::invalid_argument for a zero-constant denominator.
  static ScalarField quotient(const ScalarField& num, const ScalarField& den);

  FieldKind kind() const;
  Complex scalar() const;  // Constant value or Scale factor
  const std::vector<TraceTerm>& terms() const;
  const std::vector<ScalarField>& children() const;
  /// Ambient matrix coefficients of a TraceForm: f(g) = sum_ij C_ij g_ij.
  const ComplexMatrix& ambient_coefficient() const;
  /// Matrix size the field is defined on, 0 if the field is constant.
  int ambient_size() const;
  std::size_t node_count() const;  // distinct nodes
  bool same_node(const ScalarField& other) const { return node_ == other.node_; }

  struct Node;

 private:
  explicit ScalarField(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
  friend class FieldProgram;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(Complex c, const ScalarField& a);
ScalarField operator/(const ScalarField& a, const ScalarField& b);

/// Linearised evaluation order of a field. Shared subtrees are evaluated once.
class FieldProgram {
 public:
  explicit FieldProgram(const ScalarField& f);

  Complex value(const ComplexMatrix& g, double guard = kPoleGuard) const;
  /// 2-jet along Z from the entry jets (g, gZ, gZ^2).
  Jet2 jet(const ComplexMatrix& g, const ComplexMatrix& gz, const ComplexMatrix& gzz,
           double guard = kPoleGuard) const;
  int ambient_size() const { return ambient_size_; }

 private:
  struct Op {
    FieldKind kind;
    Complex scalar;
    const ComplexMatrix* coefficient;
    std::vector<int> args;
  };
  std::vector<Op> ops_;
  std::vector<ScalarField> keep_alive_;
  int ambient_size_ = 0;
};

Complex evaluate(const ScalarField& f, const ComplexMatrix& g, double guard = kPoleGuard);

Jet2 jet_eval(const ScalarField& f, const GroupPoint& p, const ComplexMatrix& z,
              double guard = kPoleGuard);

/// Jets of f along every element of the basis, in basis order.
std::vector<Jet2> basis_jets(const ScalarField& f, const GroupPoint& p, const SignedBasis& basis,
                             double guard = kPoleGuard);

// Signed sums over precomputed basis jets.
Complex tension_from(const std::vector<Jet2>& jets, const std::vector<int>& signs);
Complex kappa_from(const std::vector<Jet2>& a, const std::vector<Jet2>& b, const std::vector<int>& signs);

// Magnitude of the terms the signed sums add up: sum_k |Z_k^2 f| and
// sum_k |Z_k f| |Z_k h|. Rounding in either sum is of order eps times this.
double tension_scale(const std::vector<Jet2>& jets);
double kappa_scale(const std::vector<Jet2>& a, const std::vector<Jet2>& b);

/// |lhs - rhs| / max(1, |rhs|, scale): the residual measured against the size
/// of the summed terms rather than of the result.
double scaled_residual(Complex lhs, Complex rhs, double scale);

/// tau(f) = sum_k eps_k Z_k^2(f).
Complex tension(const ScalarField& f, const GroupPoint& p, const SignedBasis& basis,
                double guard = kPoleGuard);
/// kappa(f, h) = sum_k eps_k Z_k(f) Z_k(h).
Complex kappa(const ScalarField& f, const ScalarField& h, const GroupPoint& p, const SignedBasis& basis,
              double guard = kPoleGuard);

/// Central differences with step h on fresh exponentials (test oracle).
Jet2 fd_oracle(const ScalarField& f, const GroupPoint& p, const ComplexMatrix& z, double h = 1e-4);

/// |lhs - rhs| / max(1, |rhs|)
double relative_residual(Complex lhs, Complex rhs);

/// Coordinate function g -> block(g)_ij (1-based) on the named block.
ScalarField coordinate_field(const GroupDescriptor& d, Block block, int i, int j);
ScalarField coordinate_field(const GroupDescriptor& d, std::string_view name, int i, int j);

/// Size of the square block a selector addresses inside an ambient matrix.
int block_size(Block b, int ambient_size);

}  // namespace hmorph
