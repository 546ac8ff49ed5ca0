#ifndef COCALC_CLI_HPP
#define COCALC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cocalc {

/// Command-line entry point (argv without the program name). Results go
/// to `out`, diagnostics to `err` with an `error:` prefix. Exit status:
/// 0 success, 1 domain failure (law failures, unexpected bisim result,
/// sort errors), 2 usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cocalc

#endif
