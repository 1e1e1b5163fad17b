#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ipa::cli {

// Exit codes: 0 ok, 1 math or contract error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipa::cli
