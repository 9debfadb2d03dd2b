#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpds {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 infeasible or violated result, 2 usage or input errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lpds
