#pragma once

#include <cstdint>

namespace gsq::detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless counter hash; two finalizer rounds.
inline std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t s = seed ^ (counter * 0x9e3779b97f4a7c15ULL);
  std::uint64_t a = splitmix64(s);
  return splitmix64(s) ^ a;
}

inline double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace gsq::detail
