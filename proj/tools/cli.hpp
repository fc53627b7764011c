#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loxogen::cli {

/// Exit codes: 0 success, 1 a check reported violations, 2 usage or input
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loxogen::cli
