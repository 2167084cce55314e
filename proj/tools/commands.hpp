#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtutte::cli {

// Exit codes: 0 success, 1 domain failure, 2 malformed input or usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtutte::cli
