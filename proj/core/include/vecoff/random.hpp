#pragma once

#include <cmath>
#include <cstdint>

namespace vecoff {

// Counter-based draws: every value is a pure function of its key so traces
// do not depend on generation order or on the standard library's
// distribution implementations.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b, std::uint64_t stream) noexcept {
  std::uint64_t h = splitmix64(seed ^ (stream * 0xD1B54A32D192ED03ULL));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b + 0x632BE59BD9B4E019ULL));
  return h;
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double unit_uniform(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double unit_exponential(std::uint64_t bits) noexcept {
  return -std::log1p(-unit_uniform(bits));
}

enum class Stream : std::uint64_t { kFading = 1, kArrival = 2 };

}  // namespace vecoff
