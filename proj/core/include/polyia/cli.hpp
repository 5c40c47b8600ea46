#pragma once

#include <string>
#include <vector>

namespace polyia {

// Command-line driver: verbs count / series / verify / asym. Returns the
// process exit code: 0 success (verify: all checks pass), 1 verification
// failure or internal error, 2 usage error.
int run_cli(int argc, char** argv);
// Same, args without the program name (convenience for tests).
int run_cli(const std::vector<std::string>& args);

}  // namespace polyia
