#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasedr {

/// Command-line front end. `args` excludes the program name. Returns 0 on
/// success, 2 on a configuration error and 3 on a numerical failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasedr
