#pragma once

namespace rwrs {

/// Full command-line front end.  Returns the process exit code:
///   0 success, 1 verification failure, 2 malformed config or usage,
///   3 I/O failure, 4 insufficient replicates under --strict.
int run_cli(int argc, const char* const* argv);

} // namespace rwrs
