#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "opdyn/errors.hpp"

namespace opdyn::rng {

// SplitMix64 finalizer (Steele/Lea/Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives the key of a child stream from a parent key and a label.
/// Streams are identified purely by their key, so the same (seed, labels...)
/// always names the same stream no matter which thread asks for it.
inline std::uint64_t derive(std::uint64_t key, std::uint64_t label) {
  return mix64(key + 0x9e3779b97f4a7c15ull * (label + 1));
}

inline std::uint64_t derive(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  return derive(derive(key, a), b);
}

inline std::uint64_t derive(std::uint64_t key, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) {
  return derive(derive(derive(key, a), b), c);
}

// Stream labels so that independent uses of the same (seed, t) never collide.
namespace stream {
inline constexpr std::uint64_t graph = 0x67726170;
inline constexpr std::uint64_t init = 0x696e6974;
inline constexpr std::uint64_t bwr = 0x62777200;
inline constexpr std::uint64_t bandit = 0x626e6474;
}  // namespace stream

/// Counter-seeded generator: cheap to construct, so a fresh one is made per
/// (seed, time) / (seed, replicate, step) key instead of sharing state.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

 private:
  std::uint64_t state_;
};

/// Uniform in [0, bound) by rejection; no modulo bias.
inline std::uint32_t bounded(SplitMix64& g, std::uint32_t bound) {
  const std::uint64_t threshold = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
  std::uint64_t r = g();
  while (r >= threshold) r = g();
  return static_cast<std::uint32_t>(r % bound);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (no per-stream caching, so draws are a pure
/// function of the generator state).
inline double standard_normal(SplitMix64& g) {
  double u1 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  const double u2 = uniform01(g);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Draws k distinct values from [0, n) into `out` (ascending). `pool` is
/// scratch; it is rebuilt on every call.
inline void sample_distinct(SplitMix64& g, std::uint32_t n, std::uint32_t k,
                            std::vector<std::uint32_t>& pool,
                            std::vector<std::uint32_t>& out) {
  if (k > n) throw InvalidParameterError("cannot draw more distinct values than the pool holds");
  pool.resize(n);
  std::iota(pool.begin(), pool.end(), 0u);
  out.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j = i + bounded(g, n - i);
    std::swap(pool[i], pool[j]);
    out[i] = pool[i];
  }
  std::sort(out.begin(), out.end());
}

}  // namespace opdyn::rng
