#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>

namespace fractsob::cli {

// Exit codes: 0 pass/ok, 2 fail, 3 inconclusive. Module and config errors
// propagate as exceptions; the CLI maps them to exit 1.
constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitInconclusive = 3;

// Dispatch one command, write its artifacts under out_dir, print a one-line
// verdict to `out`, and return the exit code.
int run(const std::string& command, const RunConfig& cfg, const std::string& out_dir,
        std::ostream& out);

}  // namespace fractsob::cli
