#pragma once

#include <string>
#include <vector>

#include "entsim/experiments.hpp"

namespace entsim::cli {

/// Fully validated invocation: nothing is computed before this exists.
struct ParsedInvocation {
  std::string subcommand;
  experiments::ScenarioConfig config;  // alpha is filled per series at run time
  std::vector<double> alphas{1.0};
  std::string out_path;
  int verbosity = 0;
  bool normalize = false;
};

/// Names of all subcommands, in help order.
const std::vector<std::string>& subcommand_names();

/// Parses argv-style arguments (without the program name). Throws
/// std::invalid_argument with the offending flag named on any invalid input;
/// returns an empty optional-like flag via `show_help` when only help was
/// requested.
struct ParseResult {
  bool show_help = false;
  std::string help_text;
  ParsedInvocation invocation;
};

ParseResult parse(const std::vector<std::string>& args);

/// Full CLI entry point: parse, run, write CSV(s), print a summary.
int run(int argc, char** argv);

}  // namespace entsim::cli
