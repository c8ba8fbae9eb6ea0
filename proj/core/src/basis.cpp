#include "spinxfer/basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spinxfer/errors.hpp"

namespace spinxfer {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_chain_length(int chain_length) {
  if (chain_length < kMinChainLength || chain_length > kMaxChainLength) {
    throw ConfigError("chain length must lie in [" + std::to_string(kMinChainLength) + ", " +
                      std::to_string(kMaxChainLength) + "], got " +
                      std::to_string(chain_length));
  }
}

OccupationState from_sites(int chain_length, std::initializer_list<int> sites) {
  std::uint32_t mask = 0;
  for (int site : sites) mask |= 1u << (site - 1);
  return {chain_length, mask};
}

} // namespace

OccupationState::OccupationState(int chain_length, std::uint32_t mask)
    : chain_length_(chain_length), mask_(mask) {
  if (chain_length < 1 || chain_length > kMaxChainLength) {
    throw ConfigError("occupation state length out of range: " + std::to_string(chain_length));
  }
  if ((mask >> chain_length) != 0) {
    throw DomainError("occupation mask has bits beyond site " + std::to_string(chain_length));
  }
}

OccupationState OccupationState::from_string(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxChainLength)) {
    throw DomainError("occupation bitstring must have 1.." + std::to_string(kMaxChainLength) +
                      " characters, got \"" + std::string(bits) + "\"");
  }
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= 1u << i;
    } else if (bits[i] != '0') {
      throw DomainError("occupation bitstring may contain only 0/1: \"" + std::string(bits) + "\"");
    }
  }
  return {static_cast<int>(bits.size()), mask};
}

bool OccupationState::occupied(int site) const {
  if (site < 1 || site > chain_length_) {
    throw DomainError("site " + std::to_string(site) + " outside 1.." +
                      std::to_string(chain_length_));
  }
  return (mask_ >> (site - 1)) & 1u;
}

int OccupationState::weight() const noexcept { return std::popcount(mask_); }

OccupationState OccupationState::mirrored() const noexcept {
  std::uint32_t out = 0;
  for (int i = 0; i < chain_length_; ++i) {
    if ((mask_ >> i) & 1u) out |= 1u << (chain_length_ - 1 - i);
  }
  return {chain_length_, out};
}

std::string OccupationState::to_string() const {
  std::string s(static_cast<std::size_t>(chain_length_), '0');
  for (int i = 0; i < chain_length_; ++i) {
    if ((mask_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Basis::Basis(int chain_length, int max_excitations)
    : chain_length_(chain_length), max_excitations_(max_excitations) {
  states_.reserve(basis_dimension(chain_length, max_excitations));
  std::vector<bool> selector(static_cast<std::size_t>(chain_length));
  for (int k = 0; k <= max_excitations; ++k) {
    std::fill(selector.begin(), selector.end(), false);
    std::fill(selector.begin(), selector.begin() + k, true);
    // prev_permutation on a descending selector walks combinations in
    // lexicographic order of their site lists.
    do {
      std::uint32_t mask = 0;
      for (int i = 0; i < chain_length; ++i) {
        if (selector[static_cast<std::size_t>(i)]) mask |= 1u << i;
      }
      index_.emplace(mask, states_.size());
      states_.emplace_back(chain_length, mask);
    } while (std::prev_permutation(selector.begin(), selector.end()));
  }
}

std::optional<std::size_t> Basis::index_of(const OccupationState& s) const {
  if (s.chain_length() != chain_length_) return std::nullopt;
  if (auto it = index_.find(s.mask()); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t Basis::require_index(const OccupationState& s) const {
  if (auto idx = index_of(s)) return *idx;
  throw DomainError("state |" + s.to_string() + "⟩ is not in the basis (N=" +
                    std::to_string(chain_length_) +
                    ", max_excitations=" + std::to_string(max_excitations_) + ")");
}

BasisPtr enumerate_basis(int chain_length, int max_excitations) {
  check_chain_length(chain_length);
  if (max_excitations < 0 || max_excitations > chain_length) {
    throw ConfigError("max_excitations must lie in [0, " + std::to_string(chain_length) +
                      "], got " + std::to_string(max_excitations));
  }
  return BasisPtr(new Basis(chain_length, max_excitations));
}

std::size_t basis_dimension(int chain_length, int max_excitations) {
  std::size_t total = 0;
  std::size_t binom = 1; // C(N, k)
  for (int k = 0; k <= max_excitations; ++k) {
    total += binom;
    binom = binom * static_cast<std::size_t>(chain_length - k) / static_cast<std::size_t>(k + 1);
  }
  return total;
}

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("state vector requires a basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw DomainError("amplitude vector has length " + std::to_string(amplitudes_.size()) +
                      ", basis has " + std::to_string(basis_->size()) + " states");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw DomainError("state vector is not normalized (norm " +
                      std::to_string(amplitudes_.norm()) + ")");
  }
}

StateVector StateVector::normalized(BasisPtr basis, Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("cannot normalize a zero or non-finite amplitude vector");
  }
  amplitudes /= n;
  return {std::move(basis), std::move(amplitudes)};
}

complex StateVector::amplitude(const OccupationState& s) const {
  return amplitudes_(static_cast<Eigen::Index>(basis_->require_index(s)));
}

void require_same_basis(const Basis& a, const Basis& b) {
  if (!a.same_space(b)) {
    throw DomainError("basis mismatch: (N=" + std::to_string(a.chain_length()) +
                      ", K=" + std::to_string(a.max_excitations()) + ") vs (N=" +
                      std::to_string(b.chain_length()) + ", K=" +
                      std::to_string(b.max_excitations()) + ")");
  }
}

std::string_view to_string(InputKind kind) noexcept {
  switch (kind) {
  case InputKind::TypeI: return "TypeI";
  case InputKind::TypeII: return "TypeII";
  case InputKind::TypeIII: return "TypeIII";
  }
  return "?";
}

std::optional<InputKind> parse_input_kind(std::string_view name) noexcept {
  if (name == "TypeI") return InputKind::TypeI;
  if (name == "TypeII") return InputKind::TypeII;
  if (name == "TypeIII") return InputKind::TypeIII;
  return std::nullopt;
}

int required_excitations(InputKind kind) noexcept {
  return kind == InputKind::TypeII ? 1 : 2;
}

StateVector make_input_state(const BasisPtr& basis, InputKind kind) {
  if (!basis) throw DomainError("input state requires a basis");
  const int n = basis->chain_length();
  if (basis->max_excitations() < required_excitations(kind)) {
    throw ConfigError(std::string(to_string(kind)) + " input needs max_excitations >= " +
                      std::to_string(required_excitations(kind)) + ", basis has " +
                      std::to_string(basis->max_excitations()));
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  auto set = [&](const OccupationState& s, double value) {
    amps(static_cast<Eigen::Index>(basis->require_index(s))) = value;
  };
  switch (kind) {
  case InputKind::TypeI:
    set(from_sites(n, {1, 2}), 1.0);
    break;
  case InputKind::TypeII:
    set(from_sites(n, {1}), M_SQRT1_2);
    set(from_sites(n, {2}), M_SQRT1_2);
    break;
  case InputKind::TypeIII:
    set(from_sites(n, {}), 0.5);
    set(from_sites(n, {1}), 0.5);
    set(from_sites(n, {n}), 0.5);
    set(from_sites(n, {1, n}), 0.5);
    break;
  }
  return StateVector::normalized(basis, std::move(amps));
}

StateVector make_custom_state(const BasisPtr& basis, std::span<const StateTerm> terms) {
  if (!basis) throw DomainError("custom state requires a basis");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (const auto& [state, amplitude] : terms) {
    amps(static_cast<Eigen::Index>(basis->require_index(state))) += amplitude;
  }
  if (amps.norm() == 0.0) throw DomainError("custom state has only zero amplitudes");
  return StateVector::normalized(basis, std::move(amps));
}

StateVector mirror_state(const StateVector& psi) {
  const Basis& basis = psi.basis();
  Eigen::VectorXcd out(psi.amplitudes().size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto target = basis.require_index(basis.state(j).mirrored());
    out(static_cast<Eigen::Index>(target)) = psi.amplitudes()(static_cast<Eigen::Index>(j));
  }
  return {psi.basis_ptr(), std::move(out)};
}

} // namespace spinxfer
