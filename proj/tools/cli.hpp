#pragma once

#include <iosfwd>

namespace cfft::cli {

/// Runs one command line. Returns the process exit status: 0 on success,
/// 1 on a failed check, 2 on a runtime error; usage errors follow CLI11.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cfft::cli
