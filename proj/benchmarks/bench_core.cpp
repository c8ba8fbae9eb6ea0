#include <benchmark/benchmark.h>

#include "spinxfer/spinxfer.hpp"

using namespace spinxfer;

namespace {

HamiltonianMatrix long_range_hamiltonian(int n) {
  PerturbationSpec spec;
  spec.chi = 0.03;
  return build_perturbed(enumerate_basis(n, 2), pst_couplings(n, 1.0), spec);
}

void BM_BuildPerturbed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = enumerate_basis(n, 2);
  const auto profile = pst_couplings(n, 1.0);
  PerturbationSpec spec;
  spec.chi = 0.03;
  spec.eta = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(build_perturbed(basis, profile, spec));
}
BENCHMARK(BM_BuildPerturbed)->Arg(10)->Arg(15);

void BM_Eigendecompose(benchmark::State& state) {
  const auto h = long_range_hamiltonian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(h));
  state.SetLabel("D=" + std::to_string(h.dimension()));
}
BENCHMARK(BM_Eigendecompose)->Arg(10)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Trajectory(benchmark::State& state) {
  const auto h = long_range_hamiltonian(15);
  const auto spectrum = eigendecompose(h);
  const auto psi = make_input_state(h.basis_ptr(), InputKind::TypeI);
  const auto grid = TimeGrid::uniform(system_time(pst_couplings(15, 1.0)), kDefaultGridPoints,
                                      kDefaultGridSpan);
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory(spectrum, psi, grid));
}
BENCHMARK(BM_Trajectory)->Unit(benchmark::kMillisecond);

void BM_RunRealization(benchmark::State& state) {
  ExperimentConfig config;
  config.chain_length = static_cast<int>(state.range(0));
  config.input = InputKind::TypeIII;
  config.perturbation.chi = 0.03;
  const Experiment experiment(config);
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(experiment.run(index++));
}
BENCHMARK(BM_RunRealization)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Concurrence(benchmark::State& state) {
  const auto basis = enumerate_basis(10, 2);
  const auto psi = make_input_state(basis, InputKind::TypeIII);
  const auto rho = reduced_density_two_qubit(psi, 1, 10);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_PartialTrace(benchmark::State& state) {
  const auto basis = enumerate_basis(15, 2);
  const auto psi = make_input_state(basis, InputKind::TypeIII);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_density_two_qubit(psi, 1, 15));
}
BENCHMARK(BM_PartialTrace);

} // namespace

BENCHMARK_MAIN();
