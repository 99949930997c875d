#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xdiscord/channels.hpp"
#include "xdiscord/level_surface.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord::cli {

enum class Subcommand { Compute, Oracle, Dynamics, Surface, Geometry };
enum class Format { Json, Csv, Obj };

enum ExitCode : int { kOk = 0, kNonPhysical = 1, kUsage = 2 };

/// Parsed invocation. Unset optionals fall back to per-subcommand defaults:
///
///   compute   json        optional channel via --p or --gamma/--t
///   oracle    json        grid_n 64, refine_depth 8
///   dynamics  csv         samples 1001; --events switches to json, tol 1e-6
///   surface   obj         grid_n 64, measure discord, level required
///   geometry  json        only --c is read
struct RunConfig {
  Subcommand subcommand = Subcommand::Compute;
  XStateParams params;
  std::optional<std::string> output_path;
  std::optional<Format> format;
  std::optional<int> grid_n;
  std::optional<int> refine_depth;
  std::optional<int> n_samples;
  std::optional<double> level;
  std::optional<double> tol;
  std::optional<double> p;
  std::optional<double> gamma;
  std::optional<double> t;
  ChannelTarget targets = ChannelTarget::Both;
  Measure measure = Measure::Discord;
  bool events = false;
  std::optional<std::string> trajectory_path;
  std::optional<std::string> grid_output_path;
};

/// Outcome of argument parsing: either a config or an exit code plus the text
/// to print (help goes to stdout with code 0).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kOk;
  std::string message;
};

ParseResult parse_arguments(const std::vector<std::string>& args);

/// Executes the subcommand. Artifacts go to config.output_path or `out`;
/// diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xdiscord::cli
