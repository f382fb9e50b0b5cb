#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simtile::cli {

// Exit codes: 0 success, 1 usage or input error, 2 ran but judged invalid.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simtile::cli
