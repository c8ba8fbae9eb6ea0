#pragma once

#include <cstdint>
#include <random>

namespace spinxfer {

/// Master seed used when a configuration does not name one.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of realisation `index` derived from a master seed.
///
/// derive_seed(m, r) = splitmix64(m + (r + 1) * 0x9E3779B97F4A7C15)
///
/// Every index gets its own stream, so serial and parallel runs of an
/// ensemble consume identical random numbers.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Uniform generator backing every random perturbation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Doubles are formed from the top 53 bits, so draws are
/// bit-identical across standard library implementations (unlike
/// std::uniform_real_distribution).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Flat draw in [0, 1).
  double uniform01() noexcept;

  std::uint64_t next_u64() noexcept { return engine_(); }

private:
  std::mt19937_64 engine_;
};

} // namespace spinxfer
