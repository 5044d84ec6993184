#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chebdiff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // bad arguments, inadmissible spec, failed validation
inline constexpr int kExitIo = 2;       // unreadable input, parse error, unwritable output

/// Command-line front end. args excludes the program name.
///
///   differentiate --input F --r R (--n N | --auto-n --delta D --mu1 M ...)
///                 [--gamma G] [--eval-grid M] --output F
///   experiment    --config F [--output DIR] [overrides]
///   cross         --n N --gamma G --r R [--count]
///   validate      [--json]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chebdiff
