#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqha {

// Full command-line surface.  `args` excludes the program name.  Markdown
// goes to `out`; diagnostics, wall time, and the first counterexample go to
// `err`.  Returns 0 when every selected check passes, 1 on a check failure,
// and 2 on configuration or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqha
