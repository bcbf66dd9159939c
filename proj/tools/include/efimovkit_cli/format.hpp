#pragma once

#include <string>
#include <string_view>

namespace efimovkit::cli {

// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

// Strict full-string parse; empty result on any trailing garbage.
bool parse_double(std::string_view text, double& out);

}  // namespace efimovkit::cli
