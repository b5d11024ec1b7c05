#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace passcov {

// Command-line front end, factored out of main() so tests can drive it.
// `args` excludes the program name. Exit codes: 0 success, 2 bad
// command line or config, 3 infeasible problem, 4 numeric failure or
// failed validation checks.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace passcov
