#pragma once

#include <string>
#include <vector>

namespace skewmix {

/// Runs the command-line front end.
/// Exit codes: 0 success, 2 configuration error, 3 numerical-check failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace skewmix
