#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symsets::cli {

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when the checked property
/// fails, 2 on usage errors, parse errors and exceeded limits.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace symsets::cli
