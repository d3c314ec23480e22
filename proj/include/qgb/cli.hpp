#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgb::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitSyntax = 2;
inline constexpr int kExitInvalidRing = 3;
inline constexpr int kExitCapacity = 4;
inline constexpr int kExitNumeric = 5;

inline constexpr const char* kSweepCsvHeader =
    "k,mode,d,f,y,T_enum,T_formula,pairs_reducible,R,ratio_R_T,ratio_R_2y,ratio_R_4y";

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixed six-decimal rendering used for every real in CSV and JSON output.
std::string format_real(double value);

}  // namespace qgb::cli
