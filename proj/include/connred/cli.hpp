// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace connred::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // I/O error, invalid graph
inline constexpr int kUsage = 2;    // bad flags, unknown subcommand or model

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Artifacts go to `out` unless --out names a file, which
/// is then written atomically; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace connred::cli
