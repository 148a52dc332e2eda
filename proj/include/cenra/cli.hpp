#pragma once

namespace cenra {

// Full command-line front end. Returns the process exit code:
//   0 success, 1 CLI usage problems, 2 bad configuration,
//   3 numeric failure during training, 4 I/O failure.
int cli_run(int argc, const char* const* argv);

}  // namespace cenra
