#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvkit::cli {

enum ExitCode : int {
    kPass = 0,
    kFailure = 1,
    kParseError = 2,
    kStructural = 3,
    kHypothesis = 4,
};

/// Runs the command line front end; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvkit::cli
