#include "spinxfer/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <string>

#include "spinxfer/errors.hpp"

namespace spinxfer {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ConfigError(std::string(name) + " must be finite");
}

void require_non_negative(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) throw ConfigError(std::string(name) + " must be non-negative");
}

CouplingProfile make_profile(int chain_length, double j0) {
  if (chain_length < kMinChainLength || chain_length > kMaxChainLength) {
    throw ConfigError("chain length out of range: " + std::to_string(chain_length));
  }
  if (!(j0 > 0.0) || !std::isfinite(j0)) throw ConfigError("j0 must be positive and finite");
  CouplingProfile p;
  p.j0 = j0;
  p.couplings.resize(static_cast<std::size_t>(chain_length - 1));
  return p;
}

void require_profile_matches(const Basis& basis, const CouplingProfile& profile) {
  if (profile.chain_length() != basis.chain_length()) {
    throw ConfigError("coupling profile covers " + std::to_string(profile.chain_length()) +
                      " sites, basis has " + std::to_string(basis.chain_length()));
  }
}

// Index of `s` with the occupations of sites a and b exchanged, or nothing
// when they are equal.
std::optional<std::size_t> hop_target(const Basis& basis, const OccupationState& s, int a, int b) {
  if (s.occupied(a) == s.occupied(b)) return std::nullopt;
  const std::uint32_t flip = (1u << (a - 1)) | (1u << (b - 1));
  return basis.index_of(OccupationState(s.chain_length(), s.mask() ^ flip));
}

} // namespace

CouplingProfile pst_couplings(int chain_length, double j0) {
  CouplingProfile p = make_profile(chain_length, j0);
  for (int i = 1; i < chain_length; ++i) {
    p.couplings[static_cast<std::size_t>(i - 1)] = j0 * std::sqrt(double(i) * (chain_length - i));
  }
  p.j_max = *std::max_element(p.couplings.begin(), p.couplings.end());
  return p;
}

CouplingProfile uniform_couplings(int chain_length, double j0) {
  CouplingProfile p = make_profile(chain_length, j0);
  std::fill(p.couplings.begin(), p.couplings.end(), j0);
  p.j_max = j0;
  return p;
}

bool PerturbationSpec::is_zero() const noexcept {
  return eta == 0.0 && gamma == 0.0 && delta == 0.0 && chi == 0.0 &&
         std::all_of(epsilon.begin(), epsilon.end(), [](double e) { return e == 0.0; });
}

HamiltonianMatrix::HamiltonianMatrix(BasisPtr basis, Eigen::MatrixXcd entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (!basis_) throw DomainError("Hamiltonian requires a basis");
  const auto dim = static_cast<Eigen::Index>(basis_->size());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw ConfigError("Hamiltonian dimension does not match basis size " + std::to_string(dim));
  }
}

double HamiltonianMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

HamiltonianMatrix build_base(const BasisPtr& basis, const CouplingProfile& profile) {
  if (!basis) throw DomainError("Hamiltonian requires a basis");
  require_profile_matches(*basis, profile);
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const int n = basis->chain_length();
  for (std::size_t j = 0; j < basis->size(); ++j) {
    const auto& s = basis->state(j);
    for (int i = 1; i < n; ++i) {
      if (auto k = hop_target(*basis, s, i, i + 1)) {
        h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(*k)) = profile.coupling(i);
      }
    }
  }
  return {basis, std::move(h)};
}

HamiltonianMatrix add_site_energies(HamiltonianMatrix h, std::span<const double> epsilon) {
  const Basis& basis = h.basis();
  if (epsilon.size() != static_cast<std::size_t>(basis.chain_length())) {
    throw ConfigError("epsilon has " + std::to_string(epsilon.size()) + " entries, chain has " +
                      std::to_string(basis.chain_length()) + " sites");
  }
  for (double e : epsilon) require_finite(e, "epsilon");
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& s = basis.state(j);
    double shift = 0.0;
    for (int i = 1; i <= basis.chain_length(); ++i) {
      if (s.occupied(i)) shift += epsilon[static_cast<std::size_t>(i - 1)];
    }
    h.entries()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += shift;
  }
  return h;
}

HamiltonianMatrix add_excitation_interaction(HamiltonianMatrix h, double gamma, double j0) {
  require_finite(gamma, "gamma");
  require_finite(j0, "j0");
  const Basis& basis = h.basis();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const std::uint32_t mask = basis.state(j).mask();
    const int pairs = std::popcount(mask & (mask >> 1));
    h.entries()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += gamma * j0 * pairs;
  }
  return h;
}

HamiltonianMatrix add_next_nearest(HamiltonianMatrix h, double delta,
                                   const CouplingProfile& profile) {
  require_finite(delta, "delta");
  const Basis& basis = h.basis();
  require_profile_matches(basis, profile);
  const int n = basis.chain_length();
  if (n < 3) throw ConfigError("next-nearest hopping needs a chain of at least 3 sites");
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& s = basis.state(j);
    for (int i = 1; i + 2 <= n; ++i) {
      if (auto k = hop_target(basis, s, i, i + 2)) {
        const double coupling = delta * (profile.coupling(i) + profile.coupling(i + 1)) / 2.0;
        h.entries()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(*k)) += coupling;
      }
    }
  }
  return h;
}

HamiltonianMatrix apply_offdiagonal_noise(HamiltonianMatrix h, double eta, double j0, Rng& rng) {
  require_non_negative(eta, "eta");
  if (eta == 0.0) return h;
  auto& m = h.entries();
  const Eigen::Index dim = m.rows();
  for (Eigen::Index l = 0; l < dim; ++l) {
    for (Eigen::Index k = l; k < dim; ++k) {
      if (m(l, k) == complex(0.0)) continue;
      const double shift = eta * rng.uniform01() * j0;
      m(l, k) += shift;
      if (k != l) m(k, l) += shift;
    }
  }
  return h;
}

HamiltonianMatrix apply_long_range(HamiltonianMatrix h, double chi, double j_max, Rng& rng,
                                   LongRangeOptions options) {
  require_non_negative(chi, "chi");
  if (chi == 0.0) return h;
  const Basis& basis = h.basis();
  auto& m = h.entries();
  const Eigen::Index dim = m.rows();
  for (Eigen::Index l = 0; l < dim; ++l) {
    const int weight_l = basis.state(static_cast<std::size_t>(l)).weight();
    for (Eigen::Index k = options.include_diagonal ? l : l + 1; k < dim; ++k) {
      if (m(l, k) != complex(0.0)) continue;
      if (!options.include_cross_sector &&
          basis.state(static_cast<std::size_t>(k)).weight() != weight_l) {
        continue;
      }
      const double value = chi * rng.uniform01() * j_max;
      m(l, k) = value;
      m(k, l) = value;
    }
  }
  return h;
}

HamiltonianMatrix build_deterministic(const BasisPtr& basis, const CouplingProfile& profile,
                                      const PerturbationSpec& spec) {
  require_non_negative(spec.gamma, "gamma");
  require_non_negative(spec.delta, "delta");
  HamiltonianMatrix h = build_base(basis, profile);
  if (!spec.epsilon.empty()) h = add_site_energies(std::move(h), spec.epsilon);
  if (spec.gamma != 0.0) h = add_excitation_interaction(std::move(h), spec.gamma, profile.j0);
  if (spec.delta != 0.0) h = add_next_nearest(std::move(h), spec.delta, profile);
  return h;
}

HamiltonianMatrix apply_random_perturbations(HamiltonianMatrix h, const CouplingProfile& profile,
                                             const PerturbationSpec& spec, Rng& rng) {
  h = apply_offdiagonal_noise(std::move(h), spec.eta, profile.j0, rng);
  h = apply_long_range(std::move(h), spec.chi, profile.j_max, rng,
                       {spec.chi_cross_sector, spec.chi_diagonal});
  return h;
}

HamiltonianMatrix build_perturbed(const BasisPtr& basis, const CouplingProfile& profile,
                                  const PerturbationSpec& spec) {
  Rng rng(spec.seed);
  return apply_random_perturbations(build_deterministic(basis, profile, spec), profile, spec, rng);
}

} // namespace spinxfer
