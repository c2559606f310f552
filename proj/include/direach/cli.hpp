#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace direach::cli {

/// Runs one subcommand (gen, solve, verify, plan, bench). `args` excludes the
/// program name. Returns 0 on success, 1 on a verification mismatch and 2 on
/// usage, parse or IO errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace direach::cli
