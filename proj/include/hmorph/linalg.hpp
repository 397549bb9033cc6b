#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace hmorph {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Complex kI{0.0, 1.0};

// Generators and structure matrices. All indices are 1-based, as in the
// standard notation E_ij, X_rs, Y_rs, D_t.

/// E_ij: all entries zero except (i,j) = 1.
ComplexMatrix unit_matrix(int n, int i, int j);

/// D_t = E_tt.
ComplexMatrix diag_generator(int n, int t);

/// X_rs = (E_rs + E_sr) / sqrt(2), requires r < s.
ComplexMatrix sym_generator(int n, int r, int s);

/// Y_rs = (E_rs - E_sr) / sqrt(2), requires r < s.
ComplexMatrix skew_generator(int n, int r, int s);

/// I_pq = diag(-I_p, I_q).
ComplexMatrix signature_matrix(int p, int q);

/// J_n = [[0, I_n], [-I_n, 0]].
ComplexMatrix symplectic_form(int n);

ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& c, const ComplexMatrix& d);

double max_abs(const ComplexMatrix& m);

// Symmetric complex bilinear form (u,v) = sum_k u_k v_k (no conjugation).
Complex bilinear_dot(const ComplexVector& u, const ComplexVector& v);

// Index bookkeeping for the (p,q)-split of {1..n}.
struct IndexSets {
  int p = 0;
  int q = 0;

  int n() const { return p + q; }
  bool in_delta1(int i) const { return i >= 1 && i <= p; }
  bool in_delta2(int i) const { return i > p && i <= p + q; }
  // Characteristic function of Delta1.
  int chi(int i) const { return in_delta1(i) ? 1 : 0; }

  // Pairs r < s inside one block.
  std::vector<std::pair<int, int>> lambda1() const;
  // Pairs r in Delta1, s in Delta2.
  std::vector<std::pair<int, int>> lambda2() const;
};

IndexSets index_sets(int p, int q);

// All pairs 1 <= r < s <= n in lexicographic order.
std::vector<std::pair<int, int>> ordered_pairs(int n);

// Result of evaluating one matrix identity (for one (j,l) pair, where
// applicable) in floating point and on the exact integer lattice.
struct IdentityCheck {
  std::string name;
  int j = 0;
  int l = 0;
  double float_deviation = 0.0;
  long long exact_deviation = 0;  // in units of 1/2
};

struct IdentityReport {
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<IdentityCheck> checks;

  double max_float_deviation(const std::string& name) const;
  long long max_exact_deviation(const std::string& name) const;
  std::vector<std::string> names() const;
};

// Identity names. The printed form of the mixed X/Y/D identity does not hold;
// "mixed-xyd" checks it as printed and "mixed-xyd-corrected" checks
//   sum_L1 X E_jl X^t + sum_L2 Y E_jl Y^t + sum D E_jl D^t
//       = 1/2 ((-1)^(chi(j)+chi(l)) E_lj + delta_jl I_n).
namespace identity {
inline constexpr const char* kSumX2 = "sum-X2";
inline constexpr const char* kSumY2 = "sum-Y2";
inline constexpr const char* kSumD2 = "sum-D2";
inline constexpr const char* kConjX = "conj-X";
inline constexpr const char* kConjY = "conj-Y";
inline constexpr const char* kConjD = "conj-D";
inline constexpr const char* kSignedX2 = "signed-X2";
inline constexpr const char* kSignedY2 = "signed-Y2";
inline constexpr const char* kSignedConjX = "signed-conj-X";
inline constexpr const char* kSignedConjY = "signed-conj-Y";
inline constexpr const char* kMixed = "mixed-xyd";
inline constexpr const char* kMixedCorrected = "mixed-xyd-corrected";
}  // namespace identity

/// Evaluates both sides of the generator identities: the unsigned set for
/// size n (requires n >= 2) and the (p,q)-signed set (requires p+q >= 2).
/// Pass n = 0 or p+q = 0 to skip a set. Deviations are reported per (j,l).
IdentityReport check_identities(int n, int p, int q);

}  // namespace hmorph
