#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lamdelta::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
    kOk = 0,
    kUserError = 1,  // parse or type error, bad usage; also `eq` on unequal terms
    kResource = 2,   // fuel exhausted, type mismatch between eq operands, selftest failure
};

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamdelta::cli
