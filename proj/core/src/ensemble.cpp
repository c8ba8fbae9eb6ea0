#include "spinxfer/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "spinxfer/errors.hpp"
#include "spinxfer/rng.hpp"

namespace spinxfer {

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

void check_sites(SitePair sites, int n, const char* key) {
  if (sites.first < 1 || sites.second > n || sites.first >= sites.second) {
    throw ConfigError(std::string(key) + " must satisfy 1 <= a < b <= N");
  }
}

std::vector<StateTerm> resolve_terms(const std::vector<CustomTerm>& terms, int n) {
  std::vector<StateTerm> out;
  out.reserve(terms.size());
  for (const auto& term : terms) {
    auto state = OccupationState::from_string(term.bits);
    if (state.chain_length() != n) {
      throw ConfigError("custom term \"" + term.bits + "\" does not have " + std::to_string(n) +
                        " sites");
    }
    out.emplace_back(state, term.amplitude);
  }
  return out;
}

StateVector build_input(const ExperimentConfig& config, const BasisPtr& basis) {
  if (const auto* kind = std::get_if<InputKind>(&config.input)) {
    return make_input_state(basis, *kind);
  }
  const auto terms = resolve_terms(std::get<std::vector<CustomTerm>>(config.input),
                                   config.chain_length);
  return make_custom_state(basis, terms);
}

// A single epsilon entry is a uniform site energy.
PerturbationSpec expanded_perturbation(const ExperimentConfig& config) {
  PerturbationSpec p = config.perturbation;
  if (p.epsilon.size() == 1) p.epsilon.assign(static_cast<std::size_t>(config.chain_length), p.epsilon[0]);
  return p;
}

double measure_value(Measure measure, const StateVector& psi, const StateVector& target,
                     SitePair sites) {
  if (measure == Measure::Fidelity) return fidelity(psi, target);
  return eof(reduced_density_two_qubit(psi, sites.first, sites.second));
}

} // namespace

std::string_view to_string(ProbeTime probe) noexcept {
  return probe == ProbeTime::FirstRevival ? "first_revival" : "first_transfer";
}

std::string_view to_string(Measure measure) noexcept {
  return measure == Measure::Fidelity ? "fidelity" : "eof";
}

void ExperimentConfig::validate() const {
  if (chain_length < kMinChainLength || chain_length > kMaxChainLength) {
    throw ConfigError("N must lie in [" + std::to_string(kMinChainLength) + ", " +
                      std::to_string(kMaxChainLength) + "], got " + std::to_string(chain_length));
  }
  if (max_excitations < 0 || max_excitations > chain_length) {
    throw ConfigError("max_excitations must lie in [0, N]");
  }
  if (const auto* kind = std::get_if<InputKind>(&input)) {
    if (max_excitations < required_excitations(*kind)) {
      throw ConfigError("input " + std::string(to_string(*kind)) + " needs max_excitations >= " +
                        std::to_string(required_excitations(*kind)));
    }
  } else {
    const auto& terms = std::get<std::vector<CustomTerm>>(input);
    if (terms.empty()) throw ConfigError("custom input has no terms");
    for (const auto& [state, amplitude] : resolve_terms(terms, chain_length)) {
      if (state.weight() > max_excitations) {
        throw ConfigError("custom term |" + state.to_string() + "⟩ exceeds max_excitations");
      }
    }
  }
  if (!(j0 > 0.0) || !std::isfinite(j0)) throw ConfigError("j0 must be positive and finite");

  const auto& p = perturbation;
  for (auto [value, key] : {std::pair{p.eta, "eta"}, {p.gamma, "gamma"}, {p.delta, "delta"},
                            {p.chi, "chi"}}) {
    if (!std::isfinite(value) || value < 0.0) {
      throw ConfigError(std::string(key) + " must be finite and non-negative");
    }
  }
  if (p.epsilon.size() > 1 && p.epsilon.size() != static_cast<std::size_t>(chain_length)) {
    throw ConfigError("epsilon must be a scalar or a list of N values");
  }
  for (double e : p.epsilon) {
    if (!std::isfinite(e)) throw ConfigError("epsilon entries must be finite");
  }
  if (p.delta != 0.0 && chain_length < 3) throw ConfigError("delta needs N >= 3");

  if (time.points == 0) throw ConfigError("time.points must be at least 1");
  if (!(time.span_in_ts > 0.0) || !std::isfinite(time.span_in_ts)) {
    throw ConfigError("time.span must be positive");
  }
  if (realisations < 1) throw ConfigError("realisations must be at least 1");
  if (observable.target == TargetKind::Custom) {
    throw ConfigError("observable.target must be initial or mirrored");
  }
  if (observable.eof_sites) check_sites(*observable.eof_sites, chain_length, "observable.eof_sites");
  for (std::size_t i = 0; i < sweep_n.size(); ++i) {
    if (sweep_n[i] < 3 || sweep_n[i] > kMaxChainLength) {
      throw ConfigError("sweep.n values must lie in [3, " + std::to_string(kMaxChainLength) + "]");
    }
    if (i > 0 && sweep_n[i] <= sweep_n[i - 1]) {
      throw ConfigError("sweep.n must be strictly ascending");
    }
  }
}

ProbeTime resolve_probe(const ExperimentConfig& config) {
  if (config.observable.probe) return *config.observable.probe;
  const auto* kind = std::get_if<InputKind>(&config.input);
  if (kind && *kind != InputKind::TypeI) return ProbeTime::FirstTransfer;
  return ProbeTime::FirstRevival;
}

Measure resolve_measure(const ExperimentConfig& config) {
  if (config.observable.measure) return *config.observable.measure;
  const auto* kind = std::get_if<InputKind>(&config.input);
  if (kind && *kind != InputKind::TypeI) return Measure::Eof;
  return Measure::Fidelity;
}

TargetKind resolve_target(const ExperimentConfig& config) {
  if (config.observable.target) return *config.observable.target;
  return resolve_probe(config) == ProbeTime::FirstTransfer ? TargetKind::Mirrored
                                                            : TargetKind::Initial;
}

SitePair resolve_eof_sites(const ExperimentConfig& config) {
  if (config.observable.eof_sites) return *config.observable.eof_sites;
  const int n = config.chain_length;
  const auto* kind = std::get_if<InputKind>(&config.input);
  if (kind && *kind == InputKind::TypeIII) return {1, n};
  if (kind && *kind == InputKind::TypeII && resolve_probe(config) == ProbeTime::FirstTransfer) {
    return {n - 1, n};
  }
  return {1, 2};
}

double probe_time_value(double t_s, ProbeTime probe) noexcept {
  return probe == ProbeTime::FirstRevival ? t_s : t_s / 2.0;
}

Experiment::Experiment(ExperimentConfig config)
    : config_((config.validate(), std::move(config))),
      basis_(enumerate_basis(config_.chain_length, config_.max_excitations)),
      profile_(pst_couplings(config_.chain_length, config_.j0)),
      deterministic_(build_deterministic(basis_, profile_, expanded_perturbation(config_))),
      initial_(build_input(config_, basis_)),
      target_(resolve_target(config_) == TargetKind::Mirrored ? mirror_state(initial_) : initial_),
      target_kind_(resolve_target(config_)), eof_sites_(resolve_eof_sites(config_)),
      t_s_(system_time(profile_)),
      grid_(TimeGrid::uniform(t_s_, config_.time.points, config_.time.span_in_ts)) {}

std::uint64_t Experiment::realisation_seed(std::uint64_t index) const noexcept {
  return derive_seed(config_.perturbation.seed, index);
}

HamiltonianMatrix Experiment::hamiltonian(std::uint64_t index) const {
  const auto& p = config_.perturbation;
  if (p.eta == 0.0 && p.chi == 0.0) return deterministic_;
  Rng rng(realisation_seed(index));
  return apply_random_perturbations(deterministic_, profile_, p, rng);
}

ObservableSeries Experiment::run(std::uint64_t index) const { return run(index, grid_); }

ObservableSeries Experiment::run(std::uint64_t index, const TimeGrid& grid) const {
  const Spectrum spectrum = eigendecompose(hamiltonian(index));
  const auto trajectory = sample_trajectory(spectrum, initial_, grid);
  return evaluate_series(trajectory, grid, target_, eof_sites_, target_kind_);
}

double Experiment::probe(std::uint64_t index, double t) const {
  const Spectrum spectrum = eigendecompose(hamiltonian(index));
  return measure_value(resolve_measure(config_), evolve(spectrum, initial_, t), target_,
                       eof_sites_);
}

ObservableSeries run_realization(const ExperimentConfig& config, std::uint64_t index) {
  return Experiment(config).run(index);
}

Moments moments(std::span<const double> values) {
  if (values.empty()) return {};
  NeumaierSum total;
  for (double v : values) total.add(v);
  const double mean = total.value() / static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  NeumaierSum squares;
  for (double v : values) squares.add((v - mean) * (v - mean));
  return {mean, std::sqrt(squares.value() / static_cast<double>(values.size() - 1))};
}

EnsembleSummary aggregate(const ExperimentConfig& config, std::span<const ObservableSeries> runs,
                          std::vector<std::uint64_t> seeds) {
  if (runs.empty()) throw DomainError("cannot aggregate an empty ensemble");
  const TimeGrid& grid = runs.front().grid;
  for (const auto& run : runs) {
    if (run.grid.points() != grid.points()) throw DomainError("realisations use different grids");
  }
  EnsembleSummary summary{config, grid, {}, {}, {}, {}, std::move(seeds)};
  std::vector<double> fid(runs.size());
  std::vector<double> ent(runs.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      fid[r] = runs[r].fidelity[i];
      ent[r] = runs[r].eof[i];
    }
    const Moments f = moments(fid);
    const Moments e = moments(ent);
    summary.mean_fidelity.push_back(std::clamp(f.mean, 0.0, 1.0));
    summary.std_fidelity.push_back(f.stddev);
    summary.mean_eof.push_back(std::clamp(e.mean, 0.0, 1.0));
    summary.std_eof.push_back(e.stddev);
  }
  return summary;
}

EnsembleSummary run_ensemble(const ExperimentConfig& config, unsigned threads) {
  const Experiment experiment(config);
  const auto count = static_cast<std::size_t>(config.realisations);
  std::vector<std::optional<ObservableSeries>> slots(count);
  parallel_for(count, threads, [&](std::size_t r) { slots[r] = experiment.run(r); });

  std::vector<ObservableSeries> runs;
  std::vector<std::uint64_t> seeds;
  runs.reserve(count);
  seeds.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    runs.push_back(std::move(*slots[r]));
    seeds.push_back(experiment.realisation_seed(r));
  }
  return aggregate(experiment.config(), runs, std::move(seeds));
}

std::vector<SweepPoint> sweep_chain_length(const ExperimentConfig& base,
                                           std::span<const int> n_values, ProbeTime probe,
                                           unsigned threads) {
  if (!std::holds_alternative<InputKind>(base.input)) {
    throw ConfigError("chain-length sweeps need a canonical input (TypeI/II/III)");
  }
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 3) throw ConfigError("sweep chain lengths must be at least 3");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw ConfigError("sweep chain lengths must be strictly ascending");
    }
  }
  std::vector<SweepPoint> points;
  points.reserve(n_values.size());
  for (int n : n_values) {
    ExperimentConfig config = base;
    config.chain_length = n;
    config.observable.probe = probe;
    config.observable.measure = resolve_measure(base);
    // Sites and target depend on N; take the per-input defaults.
    config.observable.eof_sites.reset();
    config.observable.target.reset();
    if (config.perturbation.epsilon.size() > 1) {
      throw ConfigError("per-site epsilon cannot be swept over N");
    }
    config.sweep_n.clear();
    const Experiment experiment(config);
    const double t = probe_time_value(experiment.t_s(), probe);
    std::vector<double> values(static_cast<std::size_t>(config.realisations));
    parallel_for(values.size(), threads, [&](std::size_t r) { values[r] = experiment.probe(r, t); });
    const Moments m = moments(values);
    points.push_back({n, std::clamp(m.mean, 0.0, 1.0), m.stddev, config.realisations, t});
  }
  return points;
}

std::vector<SweepPoint> sweep_chain_length(const ExperimentConfig& base,
                                           std::span<const int> n_values, unsigned threads) {
  return sweep_chain_length(base, n_values, resolve_probe(base), threads);
}

} // namespace spinxfer
