// SPDX-License-Identifier: Apache-2.0
//
// pbcc: power allocation and Monte Carlo experiments for the parallel
// broadcast channel with common and confidential messages.

#include <iostream>

#include <CLI11.hpp>

#include "pbcc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-region power allocation for parallel broadcast channels"};
  app.require_subcommand(1);

  pbcc::cli::CliConfig cfg;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", cfg.config_path, "JSON config / input document");
    if (config_required) opt->required();
    sub->add_option("--out", cfg.out_prefix, "output prefix; writes <prefix>.csv and <prefix>.json");
    sub->add_option("--set", cfg.overrides, "override a config key, key=value (repeatable, last wins)")
        ->allow_extra_args(false);
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* allocate = app.add_subcommand("allocate", "allocate power for explicit gain bounds");
  add_common(allocate, true);
  auto* region = app.add_subcommand("region", "boundary-surface sweep over a weight grid or contour");
  add_common(region, true);
  auto* compare = app.add_subcommand("compare", "optimal allocation versus the two baselines across SNR");
  add_common(compare, true);
  auto* csit = app.add_subcommand("csit", "imperfect-CSIT sweep over the outage threshold");
  add_common(csit, true);
  auto* validate = app.add_subcommand("validate", "oracle suite on generated instances");
  add_common(validate, false);
  validate->add_option("--instances", cfg.instances, "number of generated instances");
  validate->add_option("--max-L", cfg.max_L, "largest number of sub-channels (1..3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return static_cast<int>(pbcc::cli::ExitCode::usage);
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (sub->count("--seed") > 0) cfg.seed = seed;
    if (sub->count("--threads") > 0) cfg.threads = threads;
  }
  return pbcc::cli::run(cfg, std::cout, std::cerr);
}
