#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace codonctx::cli {

// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFastaError = 2,
    kTableError = 3,
    kDataError = 4,
    kResourceCap = 5,
    kUsage = 64,
};

// Runs the command line (args excludes the program name). Returns the exit
// code; nothing is written to the process's own streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codonctx::cli
