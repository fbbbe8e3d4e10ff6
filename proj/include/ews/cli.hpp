#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ews {

/// `solve` subcommand. Exit 0 when solved, 2 when a limit tripped, 1 on
/// usage errors.
int cmd_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `bench` subcommand: runs a JSON bench spec and streams one record per run.
int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ews
