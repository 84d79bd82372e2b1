#ifndef RATREC_RNG_HPP
#define RATREC_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace ratrec {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64. All randomness in the library flows
// through instances of this generator so runs are reproducible from one seed.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [lo, hi), hi > lo. Rejection sampling keeps it unbiased.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    const std::uint64_t limit = max() - max() % span;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return lo + x % span;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
};

// Independent substream derived from (seed, tags). Used to decouple the
// random draws of different phases/functions/primes from each other.
inline Rng substream(std::uint64_t seed, std::uint64_t tag_a,
                     std::uint64_t tag_b = 0, std::uint64_t tag_c = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= tag_a * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= tag_b * 0xc2b2ae3d27d4eb4fULL;
  h ^= splitmix64(s);
  s ^= tag_c * 0x165667b19e3779f9ULL;
  h ^= splitmix64(s);
  return Rng(h);
}

} // namespace ratrec

#endif
