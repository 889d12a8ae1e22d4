#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetalift::cli {

// Parses and runs one command. Exit status: 0 when all reported checks pass,
// 1 when some check fails, 2 on flag errors, 3 on computation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetalift::cli
