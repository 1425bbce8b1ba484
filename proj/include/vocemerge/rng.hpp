#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace vocemerge {

// Portable seeded generator: xoshiro256++ seeded through splitmix64.
// All output is a pure function of the seed and the call sequence, so
// corpora regenerate byte-identically on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
    haveCachedNormal_ = false;
    cachedNormal_ = 0.0;
  }

  uint64_t nextU64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return (nextU64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via rejection (unbiased).
  uint64_t uniformInt(uint64_t bound) {
    if (bound == 0) return 0;
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = nextU64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double normal() {
    if (haveCachedNormal_) {
      haveCachedNormal_ = false;
      return cachedNormal_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cachedNormal_ = r * std::sin(a);
    haveCachedNormal_ = true;
    return r * std::cos(a);
  }

  // Index into `weights` proportionally to weight mass.
  size_t pickWeighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return 0;
    double target = uniform() * total;
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (target < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
  bool haveCachedNormal_;
  double cachedNormal_;
};

}  // namespace vocemerge
