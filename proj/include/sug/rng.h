#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sug {

// Deterministic RNG. All derived draws (bounded ints, uniforms, gaussians,
// shuffles) are implemented here on top of the raw mt19937_64 stream so that
// outputs are byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, bound), rejection-sampled (bound > 0).
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int index(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (cached second deviate).
  double gaussian() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    cache_ = radius * std::sin(angle);
    has_cache_ = true;
    return radius * std::cos(angle);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream (used to decouple draw counts between phases).
  Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 eng_;
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace sug
