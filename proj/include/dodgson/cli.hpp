#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dodgson {

/// Entry point of the `dodgson` tool. `args` excludes the program name.
/// Exit codes: 0 success or true, 1 false decision, 2 bad input,
/// 3 failed verification.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dodgson
