#include "spinxfer/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinxfer/errors.hpp"

namespace spinxfer {

namespace {

constexpr double kHermitianTolerance = 1e-12;
// Relative tolerance on the equal spacing of the single-excitation ladder.
constexpr double kLadderTolerance = 1e-9;

Eigen::VectorXcd phase_rotated(const Spectrum& spectrum, const Eigen::VectorXcd& coefficients,
                               double t) {
  const Eigen::VectorXd& energies = spectrum.eigenvalues();
  Eigen::VectorXcd rotated(coefficients.size());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    rotated(k) = coefficients(k) * std::polar(1.0, -energies(k) * t);
  }
  return spectrum.eigenvectors() * rotated;
}

} // namespace

Spectrum::Spectrum(BasisPtr basis, Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors)
    : basis_(std::move(basis)), eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {}

Eigen::MatrixXcd Spectrum::reconstruct() const {
  return eigenvectors_ * eigenvalues_.cast<complex>().asDiagonal() * eigenvectors_.adjoint();
}

Spectrum eigendecompose(const HamiltonianMatrix& h) {
  const double scale = std::max(1.0, h.entries().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > kHermitianTolerance * scale) {
    throw NumericalError("matrix is not Hermitian (defect " +
                         std::to_string(h.hermiticity_defect()) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return {h.basis_ptr(), solver.eigenvalues(), solver.eigenvectors()};
}

StateVector evolve(const Spectrum& spectrum, const StateVector& psi, double t) {
  require_same_basis(spectrum.basis(), psi.basis());
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  const Eigen::VectorXcd coefficients = spectrum.eigenvectors().adjoint() * psi.amplitudes();
  return {psi.basis_ptr(), phase_rotated(spectrum, coefficients, t)};
}

double system_time(const CouplingProfile& profile) {
  const int n = profile.chain_length();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    block(i - 1, i) = block(i, i - 1) = profile.coupling(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& e = solver.eigenvalues();
  const double spacing = (e(n - 1) - e(0)) / (n - 1);
  if (!(spacing > 0.0)) throw NumericalError("degenerate single-excitation spectrum");
  for (int k = 0; k + 1 < n; ++k) {
    if (std::abs(e(k + 1) - e(k) - spacing) > kLadderTolerance * spacing) {
      throw NumericalError("single-excitation spectrum is not equally spaced; no exact revival");
    }
  }
  return 2.0 * std::numbers::pi / spacing;
}

double mirror_time(const CouplingProfile& profile) { return system_time(profile) / 2.0; }

TimeGrid::TimeGrid(double t_s, std::vector<double> points) : t_s_(t_s), points_(std::move(points)) {
  if (!(t_s > 0.0) || !std::isfinite(t_s)) throw ConfigError("t_s must be positive and finite");
  if (points_.empty()) throw ConfigError("time grid is empty");
  if (points_.front() < 0.0) throw ConfigError("time grid has negative times");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw ConfigError("time grid has non-finite times");
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw ConfigError("time grid is not strictly ascending");
    }
  }
}

TimeGrid TimeGrid::uniform(double t_s, std::size_t count, double span_in_ts) {
  if (count == 0) throw ConfigError("time grid needs at least one point");
  if (count > 1 && !(span_in_ts > 0.0)) throw ConfigError("time span must be positive");
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) {
    points[i] = count == 1 ? 0.0
                           : span_in_ts * t_s * static_cast<double>(i) /
                                 static_cast<double>(count - 1);
  }
  return {t_s, std::move(points)};
}

std::vector<StateVector> sample_trajectory(const Spectrum& spectrum, const StateVector& psi0,
                                           const TimeGrid& grid) {
  require_same_basis(spectrum.basis(), psi0.basis());
  const Eigen::VectorXcd coefficients = spectrum.eigenvectors().adjoint() * psi0.amplitudes();
  std::vector<StateVector> out;
  out.reserve(grid.size());
  for (double t : grid.points()) {
    out.emplace_back(psi0.basis_ptr(), phase_rotated(spectrum, coefficients, t));
  }
  return out;
}

} // namespace spinxfer
