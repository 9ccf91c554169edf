#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gog {

/// Exit codes: 0 success (whatever the verdicts), 2 bad input or usage,
/// 3 a witness failed verification.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gog
