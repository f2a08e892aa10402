#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rokhlin::cli {

/// Entry point shared by the binary and the in-process CLI tests.
/// Exit codes: 0 all decided, 1 input/parse error, 2 an Undecidable or
/// Unknown result was produced.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rokhlin::cli
