#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semnet::cli {

// Runs one subcommand (args exclude the program name). Returns 0 on success,
// 1 when a stage fails and 2 on a usage error.
int run_subcommand(const std::vector<std::string>& args);
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semnet::cli
