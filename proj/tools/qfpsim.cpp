#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qfpsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum frequency processor simulator"};
  app.require_subcommand(1);

  qfp::CliOptions options;
  std::string config, out, state;
  int threads = 0;
  double at = 0.0;

  app.add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (overrides output.dir)");
  app.add_flag("--svg", options.svg, "also write SVG line plots");
  app.add_flag("--json", options.json, "also write a JSON report with the W entries");
  app.add_option("--threads", threads, "worker threads (default: QFPSIM_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  const std::map<std::string, std::string> help = {
      {"shaper-response", "shaper transmission around the grid"},
      {"sweep-offset", "gate metrics vs input frequency offset"},
      {"sweep-spacing", "gate metrics vs bin spacing, rings re-tuned per point"},
      {"sweep-loss", "gate metrics vs waveguide loss"},
      {"sweep-order", "gate metrics vs filter order and spacing"},
      {"sweep-bandwidth", "wavepacket metrics vs photon bandwidth"},
      {"optimize-eom", "best RF swing per bias for the log-voltage drive"},
  };
  for (const auto& name : qfp::kSubcommands) {
    auto* sub = app.add_subcommand(name, help.at(name))->fallthrough();
    if (name == "sweep-offset") sub->add_option("--at", at, "evaluate a single offset (GHz)");
    if (name == "sweep-bandwidth") {
      sub->add_option("--state", state, "input qubit state")
          ->check(CLI::IsMember({"zero", "one", "plus", "plus_i"}));
    }
  }

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  options.subcommand = sub->get_name();
  if (!config.empty()) options.config_path = config;
  if (!out.empty()) options.out_dir = out;
  if (app.count("--threads")) options.threads = threads;
  if (sub->get_name() == "sweep-offset" && sub->count("--at")) options.at_GHz = at;
  if (sub->get_name() == "sweep-bandwidth" && sub->count("--state")) options.input_state = state;

  return qfp::run_main(options, std::cout, std::cerr);
}
