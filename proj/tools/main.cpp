// spinxfer: spin-chain state-transfer experiments from the command line.
//
//   spinxfer run      --config exp.json --out results/
//   spinxfer ensemble --config exp.json --out results/ --realisations 100
//   spinxfer sweep    --config exp.json --out results/ --n 6 7 8 9 10
//   spinxfer preset   fig2a --out results/ --seed 7

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinxfer/cli/commands.hpp"
#include "spinxfer/cli/config.hpp"

namespace {

using namespace spinxfer;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> realisations;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
  if (needs_config) {
    cmd->add_option("--config", opts.config_path, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  cmd->add_option("--realisations", opts.realisations, "Realisation count (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opts.threads, "Worker threads, 0 = all cores")->capture_default_str();
}

ExperimentConfig load(const CommonOptions& opts) {
  ExperimentConfig config = cli::parse_config_file(opts.config_path);
  if (opts.seed) config.perturbation.seed = *opts.seed;
  if (opts.realisations) config.realisations = *opts.realisations;
  config.validate();
  return config;
}

void report(const cli::RunManifest& manifest) {
  for (const auto& f : manifest.files) {
    std::cout << (manifest.out_dir / f.path).string() << '\n';
  }
  std::cout << (manifest.out_dir / cli::kManifestName).string() << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum state transfer on engineered spin chains"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::vector<int> n_values;
  std::string preset;

  auto* run = app.add_subcommand("run", "Single realisation time series");
  add_common(run, opts, true);
  auto* ensemble = app.add_subcommand("ensemble", "Mean/std time series over realisations");
  add_common(ensemble, opts, true);
  auto* sweep = app.add_subcommand("sweep", "Probe observable against chain length");
  add_common(sweep, opts, true);
  sweep->add_option("--n", n_values, "Chain lengths (default: config sweep.n, else 6..15)");
  auto* pre = app.add_subcommand("preset", "Regenerate a figure dataset");
  add_common(pre, opts, false);
  std::string names;
  for (auto n : cli::preset_names()) names += (names.empty() ? "" : "|") + std::string(n);
  pre->add_option("name", preset, names)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    cli::RunManifest manifest;
    if (*run) {
      manifest = cli::cmd_run(load(opts), opts.out_dir, opts.config_path, opts.threads);
    } else if (*ensemble) {
      manifest = cli::cmd_ensemble(load(opts), opts.out_dir, opts.config_path, opts.threads);
    } else if (*sweep) {
      const ExperimentConfig config = load(opts);
      if (n_values.empty()) n_values = config.sweep_n;
      if (n_values.empty()) n_values = cli::default_sweep_lengths();
      manifest = cli::cmd_sweep(config, n_values, opts.out_dir, opts.config_path, opts.threads);
    } else {
      manifest = cli::cmd_preset(preset, opts.out_dir, opts.seed, opts.realisations, opts.threads);
    }
    report(manifest);
  } catch (const std::exception& e) {
    std::cerr << "spinxfer: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
