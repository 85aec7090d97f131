#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confplan::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kValidationFailure = 3;
inline constexpr int kNotPure = 4;

/// Runs one invocation; args excludes the program name.
///   plan --surface annulus|disc --start FILE --goal FILE [--samples N] [--svg FILE] [--json FILE]
///   braid --n N --word WORD [--linking] [--hub K] [--conjugate GWORD]
///   random --surface S --n N --seed SEED [--out FILE]
///   partition --surface S --n N --trials T --seed SEED
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confplan::cli
