#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpl::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Parses args (without the program name) and runs one subcommand.
/// Returns 0 on success, 1 on usage or validation errors, 2 when
/// --expect-all-match sees a mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpl::cli
