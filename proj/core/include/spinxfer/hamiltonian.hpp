#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinxfer/basis.hpp"
#include "spinxfer/rng.hpp"

namespace spinxfer {

/// Nearest-neighbour couplings J_{i,i+1}; couplings[i-1] holds J_{i,i+1}.
/// Energies are in units of j0 (hbar = 1).
struct CouplingProfile {
  double j0 = 1.0;
  std::vector<double> couplings;
  double j_max = 0.0;

  int chain_length() const noexcept { return static_cast<int>(couplings.size()) + 1; }
  double coupling(int site) const { return couplings.at(static_cast<std::size_t>(site - 1)); }
};

/// J_{i,i+1} = j0 * sqrt(i (N - i)), the perfect-transfer profile.
CouplingProfile pst_couplings(int chain_length, double j0);

/// Every coupling equal to j0. Not a transfer profile; used for contrast.
CouplingProfile uniform_couplings(int chain_length, double j0);

/// Scales of the perturbation families. Random terms draw from a generator
/// seeded by `seed` (see derive_seed for ensembles).
struct PerturbationSpec {
  double eta = 0.0;             // off-diagonal noise, units of j0
  std::vector<double> epsilon;  // site energies; empty means all zero
  double gamma = 0.0;           // neighbour interaction, units of j0
  double delta = 0.0;           // next-nearest hopping ratio
  double chi = 0.0;             // long-range channels, units of j_max
  std::uint64_t seed = kDefaultSeed;
  bool chi_cross_sector = true;
  bool chi_diagonal = false;

  bool is_zero() const noexcept;
};

/// Dense Hermitian matrix over a basis.
class HamiltonianMatrix {
public:
  HamiltonianMatrix(BasisPtr basis, Eigen::MatrixXcd entries);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Eigen::MatrixXcd& entries() noexcept { return entries_; }
  Eigen::Index dimension() const noexcept { return entries_.rows(); }

  /// Largest |H_lm - conj(H_ml)|.
  double hermiticity_defect() const;

private:
  BasisPtr basis_;
  Eigen::MatrixXcd entries_;
};

/// sum_i J_{i,i+1} (σ+_i σ-_{i+1} + h.c.) over the basis.
HamiltonianMatrix build_base(const BasisPtr& basis, const CouplingProfile& profile);

/// Diagonal += sum_i epsilon_i n_i.
HamiltonianMatrix add_site_energies(HamiltonianMatrix h, std::span<const double> epsilon);

/// Diagonal += gamma * j0 * (number of occupied neighbouring pairs).
HamiltonianMatrix add_excitation_interaction(HamiltonianMatrix h, double gamma, double j0);

/// Hops between sites i and i+2 with J_{i,i+2} = delta (J_{i,i+1} + J_{i+1,i+2}) / 2.
HamiltonianMatrix add_next_nearest(HamiltonianMatrix h, double delta,
                                   const CouplingProfile& profile);

/// Every non-zero entry (l <= m, row-major order) gains eta * d * j0 with
/// d flat in [0, 1); the transposed entry gets the same value.
HamiltonianMatrix apply_offdiagonal_noise(HamiltonianMatrix h, double eta, double j0, Rng& rng);

struct LongRangeOptions {
  bool include_cross_sector = true;
  bool include_diagonal = false;
};

/// Every zero entry (l < m, or l == m when include_diagonal) gains
/// chi * d * j_max with d flat in [0, 1), mirrored to (m, l). Entries
/// joining different excitation sectors are skipped unless
/// include_cross_sector is set.
HamiltonianMatrix apply_long_range(HamiltonianMatrix h, double chi, double j_max, Rng& rng,
                                   LongRangeOptions options = {});

/// Base Hamiltonian plus every perturbation in `spec`, applied in the order
/// epsilon, gamma, delta, eta, chi. Zero scales are skipped and consume no
/// random numbers.
HamiltonianMatrix build_perturbed(const BasisPtr& basis, const CouplingProfile& profile,
                                  const PerturbationSpec& spec);

/// The deterministic part of build_perturbed (epsilon, gamma, delta).
HamiltonianMatrix build_deterministic(const BasisPtr& basis, const CouplingProfile& profile,
                                      const PerturbationSpec& spec);

/// The random part of build_perturbed (eta, chi) applied on top of `h`.
HamiltonianMatrix apply_random_perturbations(HamiltonianMatrix h, const CouplingProfile& profile,
                                             const PerturbationSpec& spec, Rng& rng);

} // namespace spinxfer
