#pragma once

#include <cstdint>

namespace specpart {

/// xoshiro256** 1.0 (Blackman & Vigna, public domain reference
/// implementation), seeded through splitmix64. This is the single PRNG used
/// everywhere in the library: results are reproducible for a given seed on
/// any platform, though no cross-language bit compatibility is promised.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  std::uint64_t next();
  result_type operator()() { return next(); }

  /// Uniform double in [0, 1), 53 bits.
  double next_double();

  /// One Bernoulli(p) trial; p outside [0,1] is clamped by comparison
  /// semantics (p <= 0 never fires, p >= 1 always fires).
  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Derives an independent stream seed from a master seed and up to three
/// integer tags (e.g. graph size, repetition index, purpose tag). The mixing
/// is a fixed splitmix64 chain:
///   h = master
///   for t in {a, b, c}: h = splitmix64(h + 0x9E3779B97F4A7C15 * (t + 1))
/// so cell streams depend only on (master, tags), never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace specpart
