#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ospan::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kInfeasible = 3 };

/// Runs the ospan tool. args excludes the program name. Data goes to `out`
/// unless --out is given; diagnostics and the resolved config go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ospan::cli
