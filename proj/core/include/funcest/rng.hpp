#pragma once

#include <cstdint>
#include <limits>

namespace funcest {

/// xoshiro256** seeded through splitmix64 from a (master seed, stream id)
/// pair. Satisfies UniformRandomBitGenerator, so it plugs into <random>
/// distributions. Identical (seed, stream) pairs yield identical sequences.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {
    std::uint64_t x = seed ^ splitmix64_once(stream + 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) word = next_splitmix(x);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
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

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent child generator for a sub-stream of this one.
  SeededRng fork(std::uint64_t sub) const noexcept {
    return SeededRng(seed_, splitmix64_once(stream_ * 0x100000001b3ULL + sub + 1));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t next_splitmix(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix64_once(std::uint64_t x) noexcept { return next_splitmix(x); }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_[4];
};

}  // namespace funcest
