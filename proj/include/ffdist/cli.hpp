#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffdist::cli {

// Parses argv-style arguments and runs the requested subcommand.
// Exit codes: 0 success, 1 domain/validation error (one-line diagnostic on
// err), 2 resource-cap error. Never throws on user input.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ffdist::cli
