#pragma once

#include <ostream>

namespace palanatomy::cli {

// Exit codes: 0 success, 1 a verify check failed, 2 usage error, 3 the
// enumeration cap was exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace palanatomy::cli
