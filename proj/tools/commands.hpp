#pragma once

// Subcommands of the driver. Each one reads its input (if any), runs the
// checks and returns the full report envelope.

#include <carrier/report.hpp>

#include <string>
#include <vector>

namespace carrier::cli {

enum ExitCode : int { kPass = 0, kFalsified = 1, kInputError = 2 };

struct Outcome {
  nlohmann::json report;
  bool passed = false;
  /// First failing item, for the one-line diagnostic.
  std::string failure;
};

const std::vector<std::string>& command_names();
/// One-line description shown by --help.
std::string command_summary(const std::string& name);

/// Throws carrier::Error or nlohmann::json::exception on bad input.
Outcome run(const std::string& command, const report::RunConfig& cfg);

/// kInputError for schema and precondition errors, kFalsified for numerical
/// failures (budget exhausted, residual too large, ...).
int exit_code_for(const Error& e);

}  // namespace carrier::cli
