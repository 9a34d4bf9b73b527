#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxpoint/error.hpp"

namespace proxpoint::cli {

// Exit-code contract of the proxpoint tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitNonConvergence = 4;
inline constexpr int kExitDisagreement = 5;

int exit_code_for(ErrorCode code);

struct Options {
  std::string command;  // analyze | certify | solve | verify
  std::string scenario_path;
  std::optional<std::string> trace_csv;
  std::size_t starts = 1;
  std::optional<double> tol;
  bool no_timings = false;
  bool allow_maxiters = false;
};

/// Runs one command on an already-read scenario text. The report goes to out.
int run_command(const Options& options, const std::string& scenario_text, std::ostream& out);

/// Full entry point: argument parsing, file reading, run_command.
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proxpoint::cli
