#pragma once
// Command-line front end. Exit codes: 0 success or accept, 1 reject or
// violation, 2 usage or parse error.

#include <ostream>
#include <string>
#include <vector>

namespace omk {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omk
