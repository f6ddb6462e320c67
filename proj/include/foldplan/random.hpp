#pragma once

#include <cstdint>
#include <random>

namespace foldplan {

using Rng = std::mt19937_64;

// Uniform integer in [0, n). Rejection sampling keeps the stream identical
// across standard libraries, which std::uniform_int_distribution does not.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = Rng::max() - (Rng::max() % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace foldplan
