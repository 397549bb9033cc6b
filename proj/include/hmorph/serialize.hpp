#pragma once

#include "hmorph/morphisms.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace hmorph {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complex numbers are [re, im]; matrices are row lists of such pairs.
Json to_json(Complex c);
Complex complex_from_json(const Json& j);
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Field trees: {"kind", ...}. Shared subtrees are written out in full.
Json to_json(const ScalarField& f);
ScalarField field_from_json(const Json& j);

Json to_json(const Family& f);
Family family_from_json(const Json& j);

Json to_json(const MultiPoly& p);
MultiPoly polynomial_from_json(const Json& j);

/// The family is embedded; the quotient field is rebuilt on load.
Json to_json(const RationalMorphism& m);
RationalMorphism morphism_from_json(const Json& j);

/// Reports keep the run-dependent fields under "timing".
Json to_json(const VerificationReport& r);

/// Copy of j without any "timing" member, at every depth.
Json strip_timing(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Current UTC time as an ISO 8601 string.
std::string utc_timestamp();

}  // namespace hmorph
