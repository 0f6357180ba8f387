#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypermatch {

/// Runs one CLI invocation. Exit codes: 0 success, 1 internal invariant
/// violation (or failed verification), 2 parse error, 3 validation error,
/// 4 enumeration budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermatch
