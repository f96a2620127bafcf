#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polycone::cli {

enum ExitCode { Ok = 0, VerificationFailed = 2, Budget = 3, Schema = 4 };

// args excludes the program name; the report goes to out, diagnostics to err
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycone::cli
