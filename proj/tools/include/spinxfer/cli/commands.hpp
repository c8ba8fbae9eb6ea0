#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinxfer/ensemble.hpp"
#include "spinxfer/trend.hpp"

namespace spinxfer::cli {

struct EmittedFile {
  std::filesystem::path path; // relative to the output directory
  std::string kind;           // timeseries | ensemble | sweep | fit | seeds
  std::string label;
};

/// Record of one CLI invocation. Written as manifest.json after every other
/// output, so its presence signals completion.
struct RunManifest {
  std::string command;
  std::string source; // config path or preset name
  std::filesystem::path out_dir;
  std::vector<EmittedFile> files;
  double wall_seconds = 0.0;
  std::uint64_t master_seed = 0;
};

inline constexpr std::string_view kManifestName = "manifest.json";

/// Shortest rendering that parses back to the same double.
std::string format_number(double value);

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series);
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleSummary& summary);
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points);
void write_fit_json(const std::filesystem::path& path, std::span<const SweepPoint> points);

/// Realisation 0 of `config` as t_over_ts, fidelity, eof.
RunManifest cmd_run(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                    std::string source, unsigned threads = 0);

/// Mean/std over config.realisations: t_over_ts, mean_fidelity,
/// std_fidelity, mean_eof, std_eof; plus the per-realisation seeds.
RunManifest cmd_ensemble(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                         std::string source, unsigned threads = 0);

/// N, mean, std at the config's probe time, plus an exponential-in-N fit
/// sidecar (sweep_fit.json).
RunManifest cmd_sweep(const ExperimentConfig& config, std::span<const int> n_values,
                      const std::filesystem::path& out_dir, std::string source,
                      unsigned threads = 0);

inline constexpr std::uint64_t kPresetSeed = 20090601;

std::span<const std::string_view> preset_names() noexcept;

/// fig1{a,b,c}: N = 10, chi in {0.03, 0.1}, single realisation of
/// TypeI/II/III. fig2{a,b,c}: sweep N = 6..15, chi = 0.03, 100 realisations.
/// Throws ConfigError for an unknown name.
RunManifest cmd_preset(std::string_view name, const std::filesystem::path& out_dir,
                       std::optional<std::uint64_t> seed = std::nullopt,
                       std::optional<int> realisations = std::nullopt, unsigned threads = 0);

/// Configuration of one fig1 panel curve or of a fig2 panel.
ExperimentConfig preset_config(std::string_view name, double chi);

std::vector<int> default_sweep_lengths();

} // namespace spinxfer::cli
