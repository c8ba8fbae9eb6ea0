#include "spinxfer/rng.hpp"

namespace spinxfer {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double Rng::uniform01() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

} // namespace spinxfer
