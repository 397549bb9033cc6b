#pragma once

#include "hmorph/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hmorph {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  int max_size = 6;  // largest matrix size for the sampled criteria
  int max_identity_size = 8;
};

/// Outcome of one acceptance criterion. `pass` covers the mathematical checks
/// only; runtime limits are judged separately because timing is not
/// reproducible.
struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<VerificationReport> reports;
  std::vector<std::string> notes;
  double seconds = 0.0;
  double runtime_limit = 0.0;  // seconds, 0 for none

  bool pass() const;
  bool within_time() const { return runtime_limit <= 0.0 || seconds < runtime_limit; }
  double max_residual() const;
  std::vector<std::string> failures() const;  // "report/check" names
};

CriterionResult criterion_identities(const SuiteOptions& opt = {});
CriterionResult criterion_lemmas(const SuiteOptions& opt = {});
CriterionResult criterion_families(const SuiteOptions& opt = {});
CriterionResult criterion_morphisms(const SuiteOptions& opt = {});
CriterionResult criterion_example_sl2(const SuiteOptions& opt = {});
CriterionResult criterion_appendix(const SuiteOptions& opt = {});
CriterionResult criterion_duality(const SuiteOptions& opt = {});
CriterionResult criterion_oracles(const SuiteOptions& opt = {});

/// Criteria 1 to 8 in order. The ninth (determinism) compares two run-all
/// outputs and is checked outside a single run.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {});

/// Groups each family selector is verified on in the suite.
std::vector<GroupDescriptor> suite_family_groups(const std::string& selector, int max_size = 6);

struct LabelledMorphism {
  std::string label;
  RationalMorphism morphism;
};

/// Three random independent (P, Q) pairs per degree {1,2,3} or bi-degree
/// {(1,1),(2,1),(1,2)} for every family selector, drawn from the seed. Pairs
/// without a cross constant contribute each part as a plain family.
std::vector<LabelledMorphism> constructed_morphisms(std::uint64_t seed);

/// Group used to generate morphisms for a selector: the default group unless
/// its parts have too few generators to give independent polynomials.
GroupDescriptor morphism_group_for(const std::string& selector);

Json to_json(const CriterionResult& c);
Json suite_to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opt);

}  // namespace hmorph
