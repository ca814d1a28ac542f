#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geo::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kDomain = 3;
inline constexpr int kNoConvergence = 4;
inline constexpr int kValidationFailed = 5;

/// Runs `geo <op|learn|figure|validate> ...`. `args` excludes the program
/// name. Results go to `out` as JSON (or CSV for figures); errors go to `err`
/// as a single-line JSON object.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace geo::cli
