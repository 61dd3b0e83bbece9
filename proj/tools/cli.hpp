#pragma once

#include <iosfwd>

namespace zom {

// Full command-line entry point; returns the process exit code.
// 0 ok, 1 usage, 2 invariant failure, 3 io/input.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace zom
