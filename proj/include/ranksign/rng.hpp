#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ranksign {

/// splitmix64 stream (Steele, Lea, Flood 2014). Used both as a mixing function
/// for seed derivation and as the deterministic coefficient stream of the
/// extension-modulus convention, so its constants are part of the wire-level
/// contract and must not change.
struct SplitMix64 {
  std::uint64_t state;

  constexpr explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// Deterministic random generator with explicit, caller-owned state.
/// All sampling in the library goes through a Prng reference; there is no
/// global randomness. `derive` splits off an independent stream (e.g. one per
/// Monte Carlo trial) so experiments parallelize without sharing state.
class Prng {
 public:
  explicit Prng(std::uint64_t seed)
      : seed_(seed), gen_(SplitMix64(seed ^ 0xA5A5A5A5DEADBEEFULL).next()) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform value in [0, bound) via rejection; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  /// n fresh bytes, little-endian slices of the 64-bit stream.
  std::vector<std::uint8_t> bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 8 == 0) w = next_u64();
      out[i] = static_cast<std::uint8_t>(w >> (8 * (i % 8)));
    }
    return out;
  }

  /// Independent child stream; deterministic in (seed, stream index).
  Prng derive(std::uint64_t stream) const {
    SplitMix64 mix(seed_ ^ (stream * 0xD6E8FEB86659FD93ULL));
    const std::uint64_t a = mix.next();
    const std::uint64_t b = mix.next();
    return Prng(a ^ (b << 1));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace ranksign
