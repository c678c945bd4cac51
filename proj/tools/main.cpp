// zoma: CSI-free movable-antenna position optimization experiments.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  using namespace zoma::cli;

  CLI::App app{"Zeroth-order movable antenna position optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int trials = 0;

  auto add_common = [&](CLI::App* cmd, const char* out_help) {
    cmd->add_option("--config", config_path, "JSON experiment config")
        ->required();
    cmd->add_option("--out", out_path, out_help)->required();
    cmd->add_option("--seed", seed, "master seed (overrides config)");
    cmd->add_option("--trials", trials, "Monte Carlo trials (overrides config)")
        ->check(CLI::PositiveNumber);
  };

  auto* map = app.add_subcommand("map", "SNR heat map of one channel as CSV");
  add_common(map, "output CSV (x,y,snr_db)");
  auto* opt = app.add_subcommand("optimize", "single ZO-AdaMM run with trajectory");
  add_common(opt, "trajectory CSV");
  auto* cmp = app.add_subcommand("compare", "budget and noise sweeps vs the CSI baseline");
  add_common(cmp, "output directory");
  auto* chan = app.add_subcommand("channel", "dump the multipath parameters of one channel");
  add_common(chan, "output CSV");
  auto* defaults = app.add_subcommand("defaults", "print the default config as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*defaults) {
    std::cout << default_config_json().dump(2) << '\n';
    return kExitOk;
  }

  Overrides overrides;
  auto* active = app.get_subcommands().front();
  if (active->count("--seed")) overrides.seed = seed;
  if (active->count("--trials")) overrides.trials = trials;
  if (*map) return cmd_map(config_path, out_path, overrides, std::cout, std::cerr);
  if (*opt) return cmd_optimize(config_path, out_path, overrides, std::cout, std::cerr);
  if (*cmp) return cmd_compare(config_path, out_path, overrides, std::cout, std::cerr);
  return cmd_channel(config_path, out_path, overrides, std::cout, std::cerr);
}
