#pragma once

#include "hmorph/morphisms.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace hmorph::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Default directory for reports when --out is not given.
inline constexpr const char* kOutDirEnv = "HMORPH_OUT_DIR";

/// "1", "-0.5i", "2+3i", "1e-3-i".
Complex parse_complex(std::string_view text);
/// Comma-separated complex entries.
ComplexVector parse_vector(std::string_view text);
/// Terms "e1,e2,...:coef" separated by ';'. Exponents of a second variable
/// block follow a '|': "1,0|1:2i".
MultiPoly parse_polynomial(std::string_view text);

/// Runs one command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmorph::cli
