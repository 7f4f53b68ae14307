#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace interplan {

// Smallest k with 2^k >= x, for x >= 1.
inline int ceil_log2(uint64_t x) { return x <= 1 ? 0 : 64 - std::countl_zero(x - 1); }

// Largest k with 2^k <= x, for x >= 1.
inline int floor_log2(uint64_t x) { return 63 - std::countl_zero(x); }

// SplitMix64 finalizer. Derives decorrelated child seeds from a master seed
// so that every sample / experiment is re-runnable in isolation.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
inline uint64_t child_seed(uint64_t master, uint64_t index) {
  return mix64(master ^ (0xd1b54a32d192ed03ull * (index + 1)));
}

// mt19937_64 with hand-rolled draws. The standard <random> distributions are
// implementation-defined, which would break byte-for-byte reproducibility of
// seeded runs across compilers; these draws are pinned.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, k), k >= 1. Modulo bias is irrelevant at our scales.
  uint64_t next_below(uint64_t k) { return gen_() % k; }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next_below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace interplan
