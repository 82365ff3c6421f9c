#include "khull/experiment.hpp"

#include <iostream>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"khull: K-hull and zero cell Monte Carlo experiments"};
  std::string experiment, config_path, out;
  std::uint64_t seed = 0;

  app.add_option("experiment", experiment, "sample-hull | fvector-mc | zerocell-mc | expected-facets | convergence")
      ->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  auto* out_opt = app.add_option("--out", out, "output directory (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  khull::ExperimentConfig config;
  try {
    config = khull::load_config(config_path);
  } catch (const khull::Error& e) {
    std::cerr << "khull: " << e.what() << '\n';
    return 2;
  }
  if (!config.experiment.empty() && config.experiment != experiment)
    std::cerr << "khull: note: config names experiment '" << config.experiment << "', running '" << experiment
              << "'\n";
  config.experiment = experiment;
  if (*seed_opt) config.seed = seed;
  if (*out_opt) config.output_dir = out;

  const khull::RunOutcome outcome = khull::run(config);
  if (outcome.exit_code != 0) {
    std::cerr << "khull: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  for (const auto& f : outcome.files) std::cout << f << '\n';
  return 0;
}
