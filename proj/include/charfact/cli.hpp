#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charfact::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one CLI invocation. args excludes the program name. Returns the
/// process exit code: 0 ok, 2 bad arguments, 3 library error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charfact::cli
