#include "spinxfer/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spinxfer/errors.hpp"

namespace spinxfer {

namespace {

constexpr double kDensityTolerance = 1e-10;
constexpr double kNegativeEigenTolerance = 1e-12;
constexpr double kRankCutoff = 1e-12;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

} // namespace

TwoQubitDensity::TwoQubitDensity(SitePair sites, const Eigen::Matrix4cd& rho)
    : sites_(sites), rho_(rho) {
  if (sites.first == sites.second) throw DomainError("density sites must be distinct");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance) {
    throw NumericalError("two-qubit density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - complex(1.0)) > kDensityTolerance) {
    throw NumericalError("two-qubit density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -kNegativeEigenTolerance) {
    throw NumericalError("two-qubit density matrix is not positive semidefinite");
  }
}

double fidelity(const StateVector& psi_t, const StateVector& psi_fin) {
  require_same_basis(psi_t.basis(), psi_fin.basis());
  return clamp_unit(std::norm(psi_fin.amplitudes().dot(psi_t.amplitudes())));
}

TwoQubitDensity reduced_density_two_qubit(const StateVector& psi, int site_a, int site_b) {
  const Basis& basis = psi.basis();
  const int n = basis.chain_length();
  if (site_a < 1 || site_b > n || site_a >= site_b) {
    throw DomainError("reduced density needs 1 <= a < b <= " + std::to_string(n) + ", got (" +
                      std::to_string(site_a) + ", " + std::to_string(site_b) + ")");
  }
  const std::uint32_t bit_a = 1u << (site_a - 1);
  const std::uint32_t bit_b = 1u << (site_b - 1);

  // Conditional (unnormalised) pair states, keyed by the environment.
  std::map<std::uint32_t, Eigen::Vector4cd> branches;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const std::uint32_t mask = basis.state(j).mask();
    const int pair = ((mask & bit_a) ? 2 : 0) + ((mask & bit_b) ? 1 : 0);
    auto [it, inserted] = branches.try_emplace(mask & ~(bit_a | bit_b), Eigen::Vector4cd::Zero());
    it->second(pair) += psi.amplitudes()(static_cast<Eigen::Index>(j));
  }
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& [env, branch] : branches) rho += branch * branch.adjoint();
  return {SitePair{site_a, site_b}, rho};
}

double concurrence(const TwoQubitDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho.matrix());
  const Eigen::Vector4d& weights = solver.eigenvalues();

  Eigen::MatrixXcd factor(4, 4);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < 4; ++k) {
    if (weights(k) > kRankCutoff) factor.col(rank++) = solver.eigenvectors().col(k) * std::sqrt(weights(k));
  }
  if (rank == 0) throw NumericalError("two-qubit density matrix has no support");
  factor.conservativeResize(4, rank);

  const Eigen::MatrixXcd tau = factor.transpose() * spin_flip() * factor;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
  const Eigen::VectorXd& lambda = svd.singularValues(); // descending
  double c = lambda(0);
  for (Eigen::Index k = 1; k < lambda.size(); ++k) c -= lambda(k);
  return clamp_unit(c);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
  c = clamp_unit(c);
  return clamp_unit(binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c))));
}

double eof(const TwoQubitDensity& rho) { return eof_from_concurrence(concurrence(rho)); }

std::string_view to_string(TargetKind kind) noexcept {
  switch (kind) {
  case TargetKind::Initial: return "initial";
  case TargetKind::Mirrored: return "mirrored";
  case TargetKind::Custom: return "custom";
  }
  return "?";
}

ObservableSeries evaluate_series(std::span<const StateVector> trajectory, const TimeGrid& grid,
                                 const StateVector& target, SitePair eof_sites,
                                 TargetKind target_kind) {
  if (trajectory.size() != grid.size()) {
    throw DomainError("trajectory has " + std::to_string(trajectory.size()) +
                      " states but the grid has " + std::to_string(grid.size()) + " points");
  }
  ObservableSeries series{grid, {}, {}, eof_sites, target_kind};
  series.fidelity.reserve(grid.size());
  series.eof.reserve(grid.size());
  for (const auto& psi : trajectory) {
    series.fidelity.push_back(fidelity(psi, target));
    series.eof.push_back(eof(reduced_density_two_qubit(psi, eof_sites.first, eof_sites.second)));
  }
  return series;
}

std::vector<std::size_t> local_maxima(std::span<const double> values, double threshold) {
  std::vector<std::size_t> peaks;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] <= threshold) continue;
    const bool above_left = i == 0 || values[i] > values[i - 1];
    const bool above_right = i + 1 == n || values[i] > values[i + 1];
    if (above_left && above_right && n > 1) peaks.push_back(i);
  }
  return peaks;
}

} // namespace spinxfer
