#ifndef MOODBENCH_CLI_HPP
#define MOODBENCH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace moodbench::cli {

// Runs one subcommand. `args` excludes the program name. Returns the process
// exit code: 0 success, 1 runtime error, 2 usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace moodbench::cli

#endif
