#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spinxfer {

using complex = std::complex<double>;

inline constexpr int kMinChainLength = 2;
inline constexpr int kMaxChainLength = 20;

/// Occupations of an N-site chain. Sites are 1-based; site i is stored in
/// bit i-1 of the mask.
class OccupationState {
public:
  OccupationState(int chain_length, std::uint32_t mask);

  /// Parses a bitstring such as "110000" (site 1 first).
  static OccupationState from_string(std::string_view bits);

  int chain_length() const noexcept { return chain_length_; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool occupied(int site) const;
  int weight() const noexcept;

  /// Spatial reflection: site i goes to site N+1-i.
  OccupationState mirrored() const noexcept;

  /// Bitstring rendering, site 1 first.
  std::string to_string() const;

  friend bool operator==(const OccupationState&, const OccupationState&) = default;

private:
  int chain_length_;
  std::uint32_t mask_;
};

/// All occupation states of weight <= max_excitations, ordered by weight and
/// then lexicographically by the ascending list of occupied sites (so
/// |1100..⟩ precedes |1010..⟩ precedes |0110..⟩). The order is part of the
/// reproducibility contract for seeded perturbations.
class Basis {
public:
  int chain_length() const noexcept { return chain_length_; }
  int max_excitations() const noexcept { return max_excitations_; }
  std::size_t size() const noexcept { return states_.size(); }

  std::span<const OccupationState> states() const noexcept { return states_; }
  const OccupationState& state(std::size_t index) const { return states_.at(index); }

  std::optional<std::size_t> index_of(const OccupationState& s) const;

  /// Position of a state that must be present; throws DomainError otherwise.
  std::size_t require_index(const OccupationState& s) const;

  bool same_space(const Basis& other) const noexcept {
    return chain_length_ == other.chain_length_ &&
           max_excitations_ == other.max_excitations_;
  }

private:
  friend std::shared_ptr<const Basis> enumerate_basis(int, int);
  Basis(int chain_length, int max_excitations);

  int chain_length_;
  int max_excitations_;
  std::vector<OccupationState> states_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Throws ConfigError unless 2 <= chain_length <= 20 and
/// 0 <= max_excitations <= chain_length.
BasisPtr enumerate_basis(int chain_length, int max_excitations);

/// Sum of C(N, k) for k = 0..max_excitations.
std::size_t basis_dimension(int chain_length, int max_excitations);

/// A pure state over a basis. Construction checks the norm (1 within 1e-10);
/// use normalized() to rescale arbitrary amplitudes.
class StateVector {
public:
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes);

  static StateVector normalized(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  complex amplitude(const OccupationState& s) const;
  double norm() const { return amplitudes_.norm(); }

private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

/// Throws DomainError if a and b do not live in the same space.
void require_same_basis(const Basis& a, const Basis& b);

enum class InputKind { TypeI, TypeII, TypeIII };

std::string_view to_string(InputKind kind) noexcept;
std::optional<InputKind> parse_input_kind(std::string_view name) noexcept;

/// Smallest max_excitations able to represent the input.
int required_excitations(InputKind kind) noexcept;

/// TypeI   = |110…0⟩
/// TypeII  = (|10…0⟩ + |010…0⟩)/√2
/// TypeIII = (|0…0⟩ + |10…0⟩ + |0…01⟩ + |10…01⟩)/2
StateVector make_input_state(const BasisPtr& basis, InputKind kind);

using StateTerm = std::pair<OccupationState, complex>;

StateVector make_custom_state(const BasisPtr& basis, std::span<const StateTerm> terms);

StateVector mirror_state(const StateVector& psi);

} // namespace spinxfer
