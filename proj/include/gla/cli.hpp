#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gla {

// Batch front end. args excludes the program name. Reports go to out,
// timings and diagnostics to err. Returns the process exit status:
// 0 iff every requested check passed.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gla
