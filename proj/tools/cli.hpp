#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qumulant::cli {

// Dispatches a full command line (without argv[0]). Returns the process
// exit status: 0 on success, 1 on usage/validation errors, 2 on internal
// assertion failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qumulant::cli
