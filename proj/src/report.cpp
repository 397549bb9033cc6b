#include "hmorph/report.hpp"

#include <algorithm>
#include <cmath>

namespace hmorph {

bool VerificationReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

void VerificationReport::add_check(std::string name, double residual, double tol) {
  checks.push_back(Check{std::move(name), residual, tol});
}

void VerificationReport::raise_check(const std::string& name, double residual, double tol) {
  for (auto& c : checks) {
    if (c.name == name) {
      if (!(residual <= c.residual)) c.residual = residual;
      return;
    }
  }
  add_check(name, residual, tol);
}

const Check* VerificationReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const MeasuredConstant* VerificationReport::find_constant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

double VerificationReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks)
    if (!(c.residual <= m)) m = c.residual;
  return m;
}

std::vector<std::string> VerificationReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass()) out.push_back(c.name);
  return out;
}

void VerificationReport::absorb(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back(Check{prefix + "/" + c.name, c.residual, c.tolerance});
  for (auto c : other.constants) {
    c.name = prefix + "/" + c.name;
    constants.push_back(std::move(c));
  }
  for (const auto& n : other.notes) notes.push_back(prefix + ": " + n);
  resampled += other.resampled;
}

MeasuredConstant fit_constant(const std::string& name, const std::vector<Complex>& lhs,
                              const std::vector<Complex>& rhs, std::optional<Complex> expected) {
  MeasuredConstant m;
  m.name = name;
  m.expected = expected;
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (std::size_t k = 0; k < lhs.size() && k < rhs.size(); ++k) {
    num += std::conj(rhs[k]) * lhs[k];
    den += std::norm(rhs[k]);
  }
  m.count = static_cast<int>(std::min(lhs.size(), rhs.size()));
  if (den == 0.0) {
    m.value = Complex(std::nan(""), std::nan(""));
    m.spread = std::nan("");
    return m;
  }
  m.value = num / den;
  for (std::size_t k = 0; k < static_cast<std::size_t>(m.count); ++k) {
    const double r = std::abs(lhs[k] - m.value * rhs[k]) / std::max(1.0, std::abs(rhs[k]));
    if (!(r <= m.spread)) m.spread = r;
  }
  return m;
}

}  // namespace hmorph
