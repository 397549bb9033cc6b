#pragma once

#include "hmorph/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hmorph {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;

  // NaN residuals fail.
  bool pass() const { return residual <= tolerance; }
};

/// A constant measured by least squares over all samples, with the value the
/// construction predicts when there is one.
struct MeasuredConstant {
  std::string name;
  Complex value{0.0, 0.0};
  std::optional<Complex> expected;
  double spread = 0.0;  // max relative deviation of pointwise ratios from value
  int count = 0;        // pointwise ratios used
};

struct VerificationReport {
  std::string command;
  std::string subject;  // group descriptor string
  std::string provenance;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  int resampled = 0;
  std::vector<Check> checks;
  std::vector<MeasuredConstant> constants;
  std::vector<std::string> notes;
  double wall_time_seconds = 0.0;  // reported separately, never compared

  bool pass() const;
  void add_check(std::string name, double residual, double tol);
  // Keeps the larger residual when the check already exists.
  void raise_check(const std::string& name, double residual, double tol);
  const Check* find_check(const std::string& name) const;
  const MeasuredConstant* find_constant(const std::string& name) const;
  double max_residual() const;
  std::vector<std::string> failed_checks() const;
  /// Appends other's checks and constants under "prefix/".
  void absorb(const VerificationReport& other, const std::string& prefix);
};

/// Running max of a residual together with where it happened.
class ResidualTracker {
 public:
  void observe(double r) {
    if (!(r <= max_)) max_ = r;  // NaN sticks
  }
  double max() const { return max_; }

 private:
  double max_ = 0.0;
};

/// Least-squares fit of lhs ~ c * rhs over many pointwise pairs; the spread is
/// max_k |lhs_k - c rhs_k| / max(1, |rhs_k|).
MeasuredConstant fit_constant(const std::string& name, const std::vector<Complex>& lhs,
                              const std::vector<Complex>& rhs, std::optional<Complex> expected = std::nullopt);

}  // namespace hmorph
