#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinxfer/basis.hpp"
#include "spinxfer/hamiltonian.hpp"

namespace spinxfer {

/// Eigendecomposition H = V diag(E) V†, eigenvalues ascending.
class Spectrum {
public:
  Spectrum(BasisPtr basis, Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return eigenvectors_; }

  Eigen::MatrixXcd reconstruct() const;

private:
  BasisPtr basis_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

/// Throws NumericalError when H departs from Hermitian by more than 1e-12
/// (relative to its largest entry).
Spectrum eigendecompose(const HamiltonianMatrix& h);

/// exp(-i H t) psi, hbar = 1.
StateVector evolve(const Spectrum& spectrum, const StateVector& psi, double t);

/// Revival time t_S: the period 2π/spacing of the single-excitation
/// eigenvalue ladder (π/j0 for the perfect-transfer profile). Throws
/// NumericalError if the ladder is not equally spaced, i.e. the chain has no
/// exact revival.
double system_time(const CouplingProfile& profile);

/// t_S / 2, when every state has moved to its mirror image.
double mirror_time(const CouplingProfile& profile);

/// Sample times for a trajectory, with the revival time used to rescale them.
class TimeGrid {
public:
  TimeGrid(double t_s, std::vector<double> points);

  /// `count` uniform points over [0, span_in_ts * t_s]. count == 1 gives {0}.
  static TimeGrid uniform(double t_s, std::size_t count, double span_in_ts);

  double t_s() const noexcept { return t_s_; }
  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

private:
  double t_s_;
  std::vector<double> points_;
};

inline constexpr std::size_t kDefaultGridPoints = 801;
inline constexpr double kDefaultGridSpan = 4.0;

std::vector<StateVector> sample_trajectory(const Spectrum& spectrum, const StateVector& psi0,
                                           const TimeGrid& grid);

} // namespace spinxfer
