#ifndef EVOSPLIT_CLI_HPP
#define EVOSPLIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace evosplit {

/// Runs the command-line interface (analyze / split / evaluate / compare).
/// `args` excludes the program name. Exit codes: 0 success, 2 input error,
/// 3 config error, 4 oracle-size error, 5 assignment mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evosplit

#endif
