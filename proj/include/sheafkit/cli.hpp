/**
 * @file cli.hpp
 * Batch front end: `sheafkit <verb> <action> [options]`.
 *
 * Exit 0 on success, 1 on a domain failure (the witness is printed as JSON on
 * stdout), 2 on a usage or parse error (the location goes to stderr).
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sheafkit::cli {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sheafkit::cli
