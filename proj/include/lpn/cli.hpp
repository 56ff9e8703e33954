#pragma once

#include <ostream>

namespace lpn {

/// Exit codes: 0 ok / holds, 1 fails, 2 usage or input error, 3 inconclusive.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpn
