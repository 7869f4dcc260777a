//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_CLI_H_
#define CHEMEVAL_CLI_H_

#include <string>
#include <string_view>
#include <vector>

namespace chemeval::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kUndefinedMetric = 3,
  kInternalError = 4,
};

/// Runs `chemeval <command> [options]`. Reports go to --out or standard
/// output, diagnostics to standard error. Returns an ExitCode.
int run(int argc, const char *const *argv);

/// Same, with argv[0] supplied internally.
int run(const std::vector<std::string> &args);

}  // namespace chemeval::cli

#endif  // CHEMEVAL_CLI_H_
