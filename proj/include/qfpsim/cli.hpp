#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfpsim/config.hpp"

namespace qfp {

inline const std::vector<std::string> kSubcommands = {
    "shaper-response", "sweep-offset", "sweep-spacing", "sweep-loss",
    "sweep-order",     "sweep-bandwidth", "optimize-eom"};

struct CliOptions {
  std::string subcommand;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> out_dir;  // overrides output.dir
  bool svg = false;                              // or'ed with output.svg
  bool json = false;                             // or'ed with output.json
  std::optional<int> threads;
  std::optional<double> at_GHz;            // sweep-offset: single offset
  std::optional<std::string> input_state;  // sweep-bandwidth
};

/// Explicit --threads, else QFPSIM_THREADS, else the hardware concurrency.
int resolve_threads(std::optional<int> requested);

/// Runs one subcommand against a loaded configuration and writes its
/// artifacts. Returns the list of files written.
std::vector<std::filesystem::path> run(const CliOptions& options, const RunConfig& config,
                                       std::ostream& log);

/// Loads the config and runs; any qfp::Error is reported as a JSON object on
/// `err` and mapped to exit status 2.
int run_main(const CliOptions& options, std::ostream& log, std::ostream& err);

}  // namespace qfp
