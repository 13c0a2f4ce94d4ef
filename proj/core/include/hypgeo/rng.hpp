#pragma once

#include <cstdint>
#include <vector>

namespace hypgeo {

// xoshiro256** seeded through splitmix64, with hand-rolled distributions.
// std::mt19937 + std::uniform_*_distribution are implementation-defined, and
// the reporting pipeline promises byte-identical reruns for a fixed seed, so
// every stream here is pinned down exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  // Independent stream for a (seed, index) pair; used so per-trial work can be
  // parallelized or reordered without changing any drawn value.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x = a ^ (index + 0x9e3779b97f4a7c15ull);
    Rng r(0);
    for (auto& w : r.s_) w = splitmix64(x);
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, bound) by Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Fisher-Yates; identity-initialized permutation of {0..n-1}.
  std::vector<std::uint32_t> permutation(std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
      const auto j = static_cast<std::uint32_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t s_[4];
};

}  // namespace hypgeo
