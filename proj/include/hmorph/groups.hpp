#pragma once

#include "hmorph/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hmorph {

/// Supported matrix groups. The Dual* families are the compact duals of the
/// non-compact groups, carrying the semi-Riemannian signed metric; a dual
/// descriptor remembers which non-compact family it came from.
enum class GroupFamily {
  GL_R,
  SL_R,
  UStar,
  SUStar,
  SpR,
  SOStar,
  U_pq,
  SO_pq,
  Sp_pq,
  DualSU,
  DualSO,
  DualSp,
};

struct GroupDescriptor {
  GroupFamily family = GroupFamily::GL_R;
  int n = 0;  // p+q for the signature families
  int p = 0;
  int q = 0;
  GroupFamily source = GroupFamily::GL_R;  // equals family unless dual

  bool is_dual() const;
  bool has_signature() const;
  int matrix_size() const;
  // For a dual descriptor, the non-compact group it dualizes; otherwise *this.
  GroupDescriptor source_descriptor() const;

  /// "gl_r:3", "u_pq:2,1", "dual:sp_r:2", ...
  std::string to_string() const;
  static GroupDescriptor parse(std::string_view text);

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

GroupDescriptor make_group(GroupFamily family, int n);
GroupDescriptor make_group(GroupFamily family, int p, int q);

// Compact family paired with each non-compact family.
GroupFamily compact_family_of(GroupFamily source);

/// Ordered Lie algebra basis with metric signs.
struct SignedBasis {
  std::vector<ComplexMatrix> elements;
  std::vector<int> signs;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }
  void push(ComplexMatrix m, int sign, std::string label);
};

struct GroupPoint {
  GroupDescriptor group;
  ComplexMatrix matrix;
};

/// Orthonormal basis of the Lie algebra of a non-compact group, in the
/// standard display order. Throws for dual descriptors; see dual_basis.
SignedBasis algebra_basis(const GroupDescriptor& d);

/// algebra_basis for ordinary groups, dual_basis of the source for duals.
SignedBasis metric_basis(const GroupDescriptor& d);

int algebra_dimension(const GroupDescriptor& d);

/// Max-norm residual of the defining relations (including det = 1 where the
/// group requires it).
double membership_residual(const GroupPoint& pt);

/// Max-norm residual of the linearised relations: how far Z is from the Lie
/// algebra of d.
double algebra_residual(const GroupDescriptor& d, const ComplexMatrix& z);

class ExponentialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix exponential (scaling and squaring). Throws ExponentialError when the
/// result is not finite.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

inline constexpr double kDefaultSampleScale = 0.3;
inline constexpr std::uint64_t kDefaultSeed = 7;

/// Deterministic per-index seed stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// exp(sum_k c_k Z_k) with c_k uniform in [-scale, scale] over metric_basis(d).
GroupPoint sample_point(const GroupDescriptor& d, std::uint64_t seed,
                        double scale = kDefaultSampleScale);

/// sample_point for indices 0..count-1 of the seed stream.
std::vector<GroupPoint> sample_points(const GroupDescriptor& d, int count, std::uint64_t seed,
                                      double scale = kDefaultSampleScale);

struct BasisReport {
  GroupDescriptor group;
  int count = 0;
  int expected_dimension = 0;
  double orthonormality_deviation = 0.0;
  double algebra_deviation = 0.0;
  double sign_deviation = 0.0;  // dual bases: sign vs. structural k/ip split
  bool pass(double tol = 1e-12) const;
};

BasisReport verify_basis(const GroupDescriptor& d);

// Coordinate blocks of the ambient matrix.
enum class Block { Full, TopLeft, TopRight, BottomLeft, BottomRight };

std::string block_name(Block b);
Block parse_block(std::string_view name);

/// Maps a coordinate-function name ("x", "y", "z", "w") to a block, per
/// family: gl/sl/so(p,q) use x (full); u(p,q) uses z (full); u*, su*, so*,
/// sp(p,q) use z (top-left) and w (top-right); sp(n,R) uses x, y, z, w for the
/// four quadrants.
Block coordinate_block(const GroupDescriptor& d, std::string_view name);

}  // namespace hmorph
