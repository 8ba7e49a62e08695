#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>

#include "tvp/commands.hpp"
#include "tvp/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bayesian shrinkage estimation for time-varying parameter models"};
  app.require_subcommand(1);

  std::string config_path, data_path, out_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int threads = 1;

  auto add_common = [&](CLI::App* sub, bool needs_data) {
    sub->add_option("--config", config_path, "configuration file")->required();
    if (needs_data) sub->add_option("--data", data_path, "input CSV")->required();
    sub->add_option("--out", out_path, "output directory")->required();
    sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
      seed_given = true;
    });
    sub->add_option("--threads", threads, "worker threads");
  };

  CLI::App* sim = app.add_subcommand("simulate", "generate synthetic TVP data");
  add_common(sim, false);
  CLI::App* fit = app.add_subcommand("fit", "run the Gibbs sampler on a dataset");
  add_common(fit, true);
  CLI::App* fc = app.add_subcommand("forecast", "rolling one-step-ahead LPDS evaluation");
  add_common(fc, true);
  CLI::App* study = app.add_subcommand("simstudy", "simulate-fit replication study");
  add_common(study, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const tvp::Config cfg = tvp::Config::parse_file(config_path);
    const tvp::RunPaths paths{config_path, data_path, out_path};
    if (sim->parsed())
      return tvp::cmd_simulate(cfg, paths,
                               seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt);
    if (fit->parsed()) return tvp::cmd_fit(cfg, paths, seed, threads);
    if (fc->parsed()) return tvp::cmd_forecast(cfg, paths, seed, threads);
    if (study->parsed()) return tvp::cmd_simstudy(cfg, paths, seed, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
