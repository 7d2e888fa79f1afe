#pragma once

#include <cstdint>
#include <string_view>

namespace salcheck {

/// SplitMix64. Small, fast and identical on every platform, which keeps
/// reports byte-stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent stream per (seed, rdt, property, iteration).
inline Rng derive_stream(std::uint64_t seed, std::string_view rdt, std::string_view property,
                         std::uint64_t iteration) {
  Rng mix(seed ^ fnv1a(property, fnv1a(rdt)));
  std::uint64_t s = mix.next();
  Rng second(s ^ (iteration * 0xd1b54a32d192ed03ULL));
  return Rng(second.next());
}

}  // namespace salcheck
