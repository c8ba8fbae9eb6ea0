#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spinxfer/basis.hpp"
#include "spinxfer/evolution.hpp"

namespace spinxfer {

/// Two distinct 1-based sites, first < second.
struct SitePair {
  int first = 1;
  int second = 2;

  friend bool operator==(const SitePair&, const SitePair&) = default;
};

/// Reduced state of two qubits in the ordered basis {|00⟩, |01⟩, |10⟩, |11⟩};
/// the left digit is sites.first.
///
/// Construction validates Hermiticity, unit trace (1e-10) and positivity
/// (eigenvalues >= -1e-12) and throws NumericalError otherwise.
class TwoQubitDensity {
public:
  TwoQubitDensity(SitePair sites, const Eigen::Matrix4cd& rho);

  SitePair sites() const noexcept { return sites_; }
  const Eigen::Matrix4cd& matrix() const noexcept { return rho_; }

private:
  SitePair sites_;
  Eigen::Matrix4cd rho_;
};

/// |⟨a|b⟩|², clamped to [0, 1].
double fidelity(const StateVector& psi_t, const StateVector& psi_fin);

/// Partial trace of |psi⟩⟨psi| onto sites (a, b).
TwoQubitDensity reduced_density_two_qubit(const StateVector& psi, int site_a, int site_b);

/// Wootters concurrence max(0, λ1 - λ2 - λ3 - λ4).
///
/// The λ are evaluated as the singular values of W^T (σy⊗σy) W for a
/// factorisation ρ = W W†, which avoids taking square roots of the
/// near-zero eigenvalues of ρ ρ̃ for (nearly) pure states. Eigenvalues of ρ
/// below 1e-12 are treated as zero.
double concurrence(const TwoQubitDensity& rho);

/// Binary entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

/// h((1 + sqrt(1 - C²)) / 2).
double eof_from_concurrence(double c);

double eof(const TwoQubitDensity& rho);

enum class TargetKind { Initial, Mirrored, Custom };

std::string_view to_string(TargetKind kind) noexcept;

struct ObservableSeries {
  TimeGrid grid;
  std::vector<double> fidelity;
  std::vector<double> eof;
  SitePair eof_sites;
  TargetKind target = TargetKind::Initial;
};

/// Fidelity against `target` and EoF of `eof_sites` at every grid point.
ObservableSeries evaluate_series(std::span<const StateVector> trajectory, const TimeGrid& grid,
                                 const StateVector& target, SitePair eof_sites,
                                 TargetKind target_kind = TargetKind::Initial);

/// Indices of strict local maxima above `threshold` (interior points, plus
/// endpoints that exceed their single neighbour).
std::vector<std::size_t> local_maxima(std::span<const double> values, double threshold = 0.05);

} // namespace spinxfer
