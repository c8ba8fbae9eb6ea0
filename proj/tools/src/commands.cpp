#include "spinxfer/cli/commands.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <fstream>

#include "json.hpp"
#include "spinxfer/cli/config.hpp"
#include "spinxfer/errors.hpp"

namespace spinxfer::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 6> kPresets{"fig1a", "fig1b", "fig1c",
                                                   "fig2a", "fig2b", "fig2c"};
constexpr std::array<double, 2> kFig1Chi{0.03, 0.1};
constexpr double kFig2Chi = 0.03;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw ConfigError("failed writing " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

json manifest_json(const RunManifest& m, const json& config) {
  json files = json::array();
  for (const auto& f : m.files) {
    files.push_back({{"path", f.path.generic_string()}, {"kind", f.kind}, {"label", f.label}});
  }
  return {{"command", m.command},   {"source", m.source},
          {"out_dir", m.out_dir.generic_string()},
          {"files", files},         {"wall_seconds", m.wall_seconds},
          {"master_seed", m.master_seed}, {"config", config}};
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_manifest(RunManifest& manifest, const json& config, const Stopwatch& clock) {
  manifest.wall_seconds = clock.seconds();
  const fs::path path = manifest.out_dir / kManifestName;
  auto out = open_output(path);
  out << manifest_json(manifest, config).dump(2) << '\n';
  finish(out, path);
}

std::string chi_label(double chi) { return "chi=" + format_number(chi); }

} // namespace

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return {buffer.data(), end};
}

void write_series_csv(const fs::path& path, const ObservableSeries& series) {
  auto out = open_output(path);
  out << "t_over_ts,fidelity,eof\n";
  const auto& points = series.grid.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << format_number(points[i] / series.grid.t_s()) << ',' << format_number(series.fidelity[i])
        << ',' << format_number(series.eof[i]) << '\n';
  }
  finish(out, path);
}

void write_ensemble_csv(const fs::path& path, const EnsembleSummary& summary) {
  auto out = open_output(path);
  out << "t_over_ts,mean_fidelity,std_fidelity,mean_eof,std_eof\n";
  const auto& points = summary.grid.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << format_number(points[i] / summary.grid.t_s()) << ','
        << format_number(summary.mean_fidelity[i]) << ',' << format_number(summary.std_fidelity[i])
        << ',' << format_number(summary.mean_eof[i]) << ',' << format_number(summary.std_eof[i])
        << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(const fs::path& path, std::span<const SweepPoint> points) {
  auto out = open_output(path);
  out << "N,mean,std\n";
  for (const auto& p : points) {
    out << p.chain_length << ',' << format_number(p.mean) << ',' << format_number(p.stddev) << '\n';
  }
  finish(out, path);
}

void write_fit_json(const fs::path& path, std::span<const SweepPoint> points) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) xy.emplace_back(p.chain_length, p.mean);
  json doc{{"model", std::string(to_string(TrendModel::ExponentialInN))},
           {"formula", "y = amplitude * exp(-rate * N)"}};
  try {
    const TrendFit fit = fit_trend(xy, TrendModel::ExponentialInN);
    doc["amplitude"] = fit.amplitude;
    doc["rate"] = fit.scale;
    doc["residual_sum_squares"] = fit.residual_sum_squares;
    doc["points"] = fit.points;
  } catch (const FitError& e) {
    doc["error"] = e.what();
  }
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
}

RunManifest cmd_run(const ExperimentConfig& config, const fs::path& out_dir, std::string source,
                    unsigned /*threads*/) {
  const Stopwatch clock;
  prepare_dir(out_dir);
  RunManifest manifest{"run", std::move(source), out_dir, {}, 0.0, config.perturbation.seed};
  const auto series = run_realization(config, 0);
  write_series_csv(out_dir / "series.csv", series);
  manifest.files.push_back({"series.csv", "timeseries", chi_label(config.perturbation.chi)});
  write_manifest(manifest, to_json(config), clock);
  return manifest;
}

RunManifest cmd_ensemble(const ExperimentConfig& config, const fs::path& out_dir,
                         std::string source, unsigned threads) {
  const Stopwatch clock;
  prepare_dir(out_dir);
  RunManifest manifest{"ensemble", std::move(source), out_dir, {}, 0.0, config.perturbation.seed};
  const auto summary = run_ensemble(config, threads);
  write_ensemble_csv(out_dir / "ensemble.csv", summary);
  manifest.files.push_back({"ensemble.csv", "ensemble", chi_label(config.perturbation.chi)});

  const fs::path seeds_path = out_dir / "seeds.csv";
  auto seeds = open_output(seeds_path);
  seeds << "realisation,seed\n";
  for (std::size_t r = 0; r < summary.seeds.size(); ++r) seeds << r << ',' << summary.seeds[r] << '\n';
  finish(seeds, seeds_path);
  manifest.files.push_back({"seeds.csv", "seeds", ""});

  write_manifest(manifest, to_json(config), clock);
  return manifest;
}

RunManifest cmd_sweep(const ExperimentConfig& config, std::span<const int> n_values,
                      const fs::path& out_dir, std::string source, unsigned threads) {
  const Stopwatch clock;
  prepare_dir(out_dir);
  RunManifest manifest{"sweep", std::move(source), out_dir, {}, 0.0, config.perturbation.seed};
  const auto points = sweep_chain_length(config, n_values, threads);
  write_sweep_csv(out_dir / "sweep.csv", points);
  write_fit_json(out_dir / "sweep_fit.json", points);
  manifest.files.push_back({"sweep.csv", "sweep", chi_label(config.perturbation.chi)});
  manifest.files.push_back({"sweep_fit.json", "fit", ""});
  json echo = to_json(config);
  echo["sweep"] = {{"n", std::vector<int>(n_values.begin(), n_values.end())}};
  write_manifest(manifest, echo, clock);
  return manifest;
}

std::span<const std::string_view> preset_names() noexcept { return kPresets; }

std::vector<int> default_sweep_lengths() { return {6, 7, 8, 9, 10, 11, 12, 13, 14, 15}; }

ExperimentConfig preset_config(std::string_view name, double chi) {
  if (name.size() != 5 || !(name.starts_with("fig1") || name.starts_with("fig2"))) {
    throw ConfigError("unknown preset \"" + std::string(name) + "\"");
  }
  ExperimentConfig config;
  switch (name[4]) {
  case 'a': config.input = InputKind::TypeI; break;
  case 'b': config.input = InputKind::TypeII; break;
  case 'c': config.input = InputKind::TypeIII; break;
  default: throw ConfigError("unknown preset \"" + std::string(name) + "\"");
  }
  config.perturbation.chi = chi;
  config.perturbation.seed = kPresetSeed;
  if (name.starts_with("fig1")) {
    config.chain_length = 10;
    config.realisations = 1;
  } else {
    config.chain_length = 15;
    config.realisations = kDefaultRealisations;
    config.sweep_n = default_sweep_lengths();
  }
  config.validate();
  return config;
}

RunManifest cmd_preset(std::string_view name, const fs::path& out_dir,
                       std::optional<std::uint64_t> seed, std::optional<int> realisations,
                       unsigned threads) {
  const Stopwatch clock;
  const std::string preset(name);
  preset_config(name, 0.0); // rejects unknown names before touching the disk
  prepare_dir(out_dir);
  const std::uint64_t master = seed.value_or(kPresetSeed);
  RunManifest manifest{"preset", preset, out_dir, {}, 0.0, master};
  json configs = json::array();

  if (name.starts_with("fig1")) {
    for (double chi : kFig1Chi) {
      ExperimentConfig config = preset_config(name, chi);
      config.perturbation.seed = master;
      const fs::path file = preset + "_chi" + format_number(chi) + ".csv";
      write_series_csv(out_dir / file, run_realization(config, 0));
      manifest.files.push_back({file, "timeseries", chi_label(chi)});
      configs.push_back(to_json(config));
    }
  } else {
    ExperimentConfig config = preset_config(name, kFig2Chi);
    config.perturbation.seed = master;
    if (realisations) config.realisations = *realisations;
    config.validate();
    const auto points = sweep_chain_length(config, config.sweep_n, threads);
    const fs::path csv = preset + ".csv";
    const fs::path fit = preset + "_fit.json";
    write_sweep_csv(out_dir / csv, points);
    write_fit_json(out_dir / fit, points);
    manifest.files.push_back({csv, "sweep", chi_label(kFig2Chi)});
    manifest.files.push_back({fit, "fit", ""});
    configs.push_back(to_json(config));
  }
  write_manifest(manifest, configs, clock);
  return manifest;
}

} // namespace spinxfer::cli
