#ifndef CAPPLAN_CLI_HPP
#define CAPPLAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace capplan::cli {

// Runs one invocation. args excludes the program name.
// Exit codes: 0 success, 1 audit violations (fabric), 2 invalid input/file.
// Errors print a single machine-parsable line to err:
//   error: <code>: <detail>
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace capplan::cli

#endif
