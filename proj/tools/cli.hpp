#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costens::cli {

// Exit codes: 0 success, 1 data or model error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costens::cli
