#pragma once

#include <cstdint>

namespace flockspec {

// Counter-based generator (splitmix64 of seed ^ golden-ratio stream of the
// counter). Stateless by design: the same (seed, counter) pair yields the
// same draw on every platform, which is what makes seeded scenarios
// bit-reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CounterRng {
  std::uint64_t seed = 1;

  // uniform in [-1, 1), 53-bit resolution
  double unit(std::uint64_t counter) const {
    std::uint64_t r = splitmix64(seed * 0x9e3779b97f4a7c15ULL + counter);
    return static_cast<double>(r >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  }
};

}  // namespace flockspec
