#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library routines it is used to check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "spinxfer/basis.hpp"

namespace spinxfer::oracle {

/// Masks of every N-bit string with popcount <= k, by filtering all 2^N.
inline std::vector<std::uint32_t> filtered_bitstrings(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) <= k) out.push_back(m);
  }
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with
/// zero diagonal and off-diagonal `b`, from the signs of the LDLᵀ pivots
/// of (T - x I) (Sturm count).
inline int sturm_count(const std::vector<long double>& b, long double x) {
  int count = 0;
  long double d = -x;
  if (d < 0) ++count;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (d == 0) d = 1e-30L;
    d = -x - b[i] * b[i] / d;
    if (d < 0) ++count;
  }
  return count;
}

/// Eigenvalues of the zero-diagonal tridiagonal matrix by Sturm bisection in
/// long double.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& off_diagonal) {
  std::vector<long double> b(off_diagonal.begin(), off_diagonal.end());
  const std::size_t n = b.size() + 1;
  long double bound = 0;
  for (auto v : b) bound = std::max(bound, std::abs(v));
  bound = 2 * bound + 1;
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    long double lo = -bound, hi = bound;
    for (int it = 0; it < 200; ++it) {
      const long double mid = (lo + hi) / 2;
      if (sturm_count(b, mid) > static_cast<int>(k)) hi = mid;
      else lo = mid;
    }
    out.push_back(static_cast<double>((lo + hi) / 2));
  }
  return out;
}

/// Embeds a state over a truncated basis into the full 2^N space (index = mask).
inline Eigen::VectorXcd embed_full(const StateVector& psi) {
  const Basis& basis = psi.basis();
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index(1) << basis.chain_length());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    full(basis.state(j).mask()) = psi.amplitudes()(static_cast<Eigen::Index>(j));
  }
  return full;
}

/// Partial trace of the full 2^N density matrix onto sites (a, b), pair index
/// 2*n_a + n_b.
inline Eigen::Matrix4cd brute_force_partial_trace(const Eigen::VectorXcd& full, int n, int a, int b) {
  const Eigen::MatrixXcd rho = full * full.adjoint();
  const std::uint32_t ba = 1u << (a - 1), bb = 1u << (b - 1);
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  const std::uint32_t dim = 1u << n;
  for (std::uint32_t row = 0; row < dim; ++row) {
    for (std::uint32_t col = 0; col < dim; ++col) {
      if ((row & ~(ba | bb)) != (col & ~(ba | bb))) continue;
      const int i = ((row & ba) ? 2 : 0) + ((row & bb) ? 1 : 0);
      const int j = ((col & ba) ? 2 : 0) + ((col & bb) ? 1 : 0);
      out(i, j) += rho(row, col);
    }
  }
  return out;
}

/// Concurrence straight from the definition: square roots of the eigenvalues
/// of ρ (σy⊗σy) ρ* (σy⊗σy), via a general (non-Hermitian) eigensolver.
inline double literal_concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd sy;
  sy << 0.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0.0;
  Eigen::Matrix4cd yy;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) yy.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
  const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r);
  std::vector<double> lambda;
  for (int k = 0; k < 4; ++k) lambda.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(k).real())));
  std::sort(lambda.rbegin(), lambda.rend());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

inline double binary_entropy(double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

/// Random normalised amplitudes (Gaussian components).
inline Eigen::VectorXcd random_amplitudes(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) z = {normal(gen), normal(gen)};
  return v / v.norm();
}

/// Random two-qubit density matrix A A† / tr(A A†).
inline Eigen::Matrix4cd random_density(std::mt19937_64& gen, int rank = 4) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = {normal(gen), normal(gen)};
  Eigen::Matrix4cd rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Excitation-number operator over a basis.
inline Eigen::MatrixXcd number_operator(const Basis& basis) {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                              static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    n(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = basis.state(j).weight();
  }
  return n;
}

} // namespace spinxfer::oracle
