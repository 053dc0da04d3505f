#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pdsm::cli {

// Runs one command line (argv[0] excluded). Data goes to files; results and
// diagnostics go to `out` and `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdsm::cli
