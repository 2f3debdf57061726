#pragma once

namespace rankagg {

/// Entry point of the `rankagg` command line tool. Returns 0 on success,
/// 1 on a usage error and 2 on a data or validation error.
int cli_main(int argc, char** argv);

}  // namespace rankagg
