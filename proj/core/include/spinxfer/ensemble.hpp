#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinxfer/basis.hpp"
#include "spinxfer/evolution.hpp"
#include "spinxfer/hamiltonian.hpp"
#include "spinxfer/observables.hpp"

namespace spinxfer {

inline constexpr int kDefaultMaxExcitations = 2;
inline constexpr int kDefaultRealisations = 100;

/// Which characteristic time a probe samples: the revival t_S or the
/// transfer (mirror) time t_S / 2.
enum class ProbeTime { FirstRevival, FirstTransfer };

enum class Measure { Fidelity, Eof };

std::string_view to_string(ProbeTime probe) noexcept;
std::string_view to_string(Measure measure) noexcept;

/// A custom input term; `bits` renders the occupation ("1100").
struct CustomTerm {
  std::string bits;
  complex amplitude{1.0, 0.0};
};

using InputSpec = std::variant<InputKind, std::vector<CustomTerm>>;

/// Unset fields take per-input defaults, see resolve_* below.
struct ObservableSelection {
  std::optional<Measure> measure;
  std::optional<TargetKind> target;
  std::optional<SitePair> eof_sites;
  std::optional<ProbeTime> probe;
};

struct TimeGridSpec {
  std::size_t points = kDefaultGridPoints;
  double span_in_ts = kDefaultGridSpan;
};

/// perturbation.epsilon may hold zero entries, one (uniform) or N.
struct ExperimentConfig {
  int chain_length = 0;
  int max_excitations = kDefaultMaxExcitations;
  InputSpec input = InputKind::TypeI;
  double j0 = 1.0;
  PerturbationSpec perturbation;
  TimeGridSpec time;
  ObservableSelection observable;
  int realisations = kDefaultRealisations;
  std::vector<int> sweep_n;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// Default probe: FirstRevival for TypeI and custom inputs, FirstTransfer
/// for TypeII and TypeIII (their EoF peaks sit at odd multiples of t_S/2).
ProbeTime resolve_probe(const ExperimentConfig& config);

/// Fidelity for TypeI and custom inputs, EoF for TypeII and TypeIII.
Measure resolve_measure(const ExperimentConfig& config);

/// Initial state for revival probes, mirrored state for transfer probes.
TargetKind resolve_target(const ExperimentConfig& config);

/// TypeII: (1,2) at revival, (N-1,N) at transfer. TypeIII: (1,N).
/// TypeI and custom inputs: (1,2).
SitePair resolve_eof_sites(const ExperimentConfig& config);

double probe_time_value(double t_s, ProbeTime probe) noexcept;

/// Everything shared by the realisations of one configuration: basis,
/// coupling profile, the deterministic part of the Hamiltonian, input and
/// target states, revival time and grid. Immutable and shareable.
class Experiment {
public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const noexcept { return config_; }
  const BasisPtr& basis() const noexcept { return basis_; }
  const CouplingProfile& profile() const noexcept { return profile_; }
  const StateVector& initial_state() const noexcept { return initial_; }
  const StateVector& target_state() const noexcept { return target_; }
  TargetKind target_kind() const noexcept { return target_kind_; }
  SitePair eof_sites() const noexcept { return eof_sites_; }
  double t_s() const noexcept { return t_s_; }
  const TimeGrid& grid() const noexcept { return grid_; }

  std::uint64_t realisation_seed(std::uint64_t index) const noexcept;

  /// Perturbed Hamiltonian of realisation `index`.
  HamiltonianMatrix hamiltonian(std::uint64_t index) const;

  ObservableSeries run(std::uint64_t index) const;
  ObservableSeries run(std::uint64_t index, const TimeGrid& grid) const;

  /// The selected measure of realisation `index` at a single time.
  double probe(std::uint64_t index, double t) const;

private:
  ExperimentConfig config_;
  BasisPtr basis_;
  CouplingProfile profile_;
  HamiltonianMatrix deterministic_;
  StateVector initial_;
  StateVector target_;
  TargetKind target_kind_;
  SitePair eof_sites_;
  double t_s_;
  TimeGrid grid_;
};

ObservableSeries run_realization(const ExperimentConfig& config, std::uint64_t index);

/// Mean and sample standard deviation (divisor n - 1; 0 for n = 1).
struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Compensated (Neumaier) summation, so the result does not depend on the
/// order of `values` beyond the last bit.
Moments moments(std::span<const double> values);

struct EnsembleSummary {
  ExperimentConfig config;
  TimeGrid grid;
  std::vector<double> mean_fidelity;
  std::vector<double> std_fidelity;
  std::vector<double> mean_eof;
  std::vector<double> std_eof;
  std::vector<std::uint64_t> seeds;
};

/// Pointwise moments over realisations sharing one grid.
EnsembleSummary aggregate(const ExperimentConfig& config, std::span<const ObservableSeries> runs,
                          std::vector<std::uint64_t> seeds);

/// Runs config.realisations realisations on `threads` workers (0 = hardware
/// concurrency). The summary does not depend on the worker count.
EnsembleSummary run_ensemble(const ExperimentConfig& config, unsigned threads = 0);

struct SweepPoint {
  int chain_length = 0;
  double mean = 0.0;
  double stddev = 0.0;
  int realisations = 0;
  double probe_time = 0.0;
};

/// For each N, rebuilds the experiment and records the selected measure at
/// the unperturbed revival (or transfer) time over config.realisations runs.
std::vector<SweepPoint> sweep_chain_length(const ExperimentConfig& base,
                                           std::span<const int> n_values, ProbeTime probe,
                                           unsigned threads = 0);

/// Same, with the probe resolved from the base config.
std::vector<SweepPoint> sweep_chain_length(const ExperimentConfig& base,
                                           std::span<const int> n_values, unsigned threads = 0);

} // namespace spinxfer
