#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsp::cli {

/// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error.
enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

/// Runs one `lsp <subcommand> ...` invocation. `args` excludes the program
/// name. The resolved configuration is echoed to `out`; diagnostics and
/// summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsp::cli
