#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace gssl {

// One splitmix64 step (Vigna's public-domain mixer); used only to derive
// seeds for substreams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source built on std::mt19937_64, whose output
// sequence is pinned by the C++ standard, so a seed reproduces the same
// stream on every platform. Uniform doubles and bounded integers are
// derived by hand below; std::uniform_*_distribution is avoided because
// its stream is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Independent generator for (seed, index). Per-walk and per-trial
  // substreams come from here so results cannot depend on scheduling.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    std::uint64_t mixed = splitmix64_next(state);
    state = mixed + 0x9e3779b97f4a7c15ULL * (index + 1);
    return Rng(splitmix64_next(state));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), unbiased (rejection sampling).
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_below: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace gssl
