#pragma once

namespace entmed::cli {

// exit codes: 0 success, 1 runtime failure, 2 usage or schema error, 3 unstable dynamics
int run_cli(int argc, char** argv);

}  // namespace entmed::cli
