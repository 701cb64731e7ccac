#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffr {

// Runs one CLI invocation.  Exit codes: 0 success, 1 validator failure,
// 2 usage or configuration error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffr
