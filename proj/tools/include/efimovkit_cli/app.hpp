#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace efimovkit::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;

// Runs one invocation. args[0] is the program name. Results go to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efimovkit::cli
