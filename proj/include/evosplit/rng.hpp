#ifndef EVOSPLIT_RNG_HPP
#define EVOSPLIT_RNG_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace evosplit {

/// Deterministic PRNG used for every stochastic choice in the library.
/// splitmix64 core with rejection sampling for bounded draws, so a given
/// seed produces the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Seed for an independent derived stream.
  std::uint64_t fork_seed() { return next_u64(); }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Seed wrapper: identical seed and inputs give bit-identical results.
struct RngSeed {
  std::uint64_t master_seed = 0;
};

}  // namespace evosplit

#endif
