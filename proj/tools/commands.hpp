#pragma once

#include <iosfwd>

namespace slz::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace slz::cli
