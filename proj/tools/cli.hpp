#pragma once
// Command-line front end. run() never throws: errors become exit codes
// 0 (success), 1 (solver or I/O failure), 2 (usage error).
#include <iosfwd>
#include <string>
#include <vector>

namespace nilbal::cli {

enum ExitCode { ok = 0, solver_failure = 1, usage_error = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace nilbal::cli
