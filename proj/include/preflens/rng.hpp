#pragma once
// Deterministic random number generation: xoshiro256++ seeded through SplitMix64,
// with hand-rolled distribution draws. All outputs are bit-identical across
// platforms and standard-library versions, which std::mt19937 + std::*_distribution
// do not guarantee.

#include <cstdint>
#include <cmath>
#include <string_view>
#include <vector>

namespace preflens {

// SplitMix64 step; mutates the state and returns the next value.
constexpr std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a 64-bit over bytes. Stable (unlike std::hash) so stream keys derived
// from strings reproduce across builds.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// xoshiro256++ engine with distribution helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Independent stream addressed by (seed, key). Used to give every
  // (judge, group, fold, chain) unit its own generator.
  static Rng from_key(std::uint64_t seed, std::string_view key) {
    std::uint64_t sm = seed ^ fnv1a64(key);
    return Rng(splitmix64(sm));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are generated together and the
  // second is cached, so draws cost one or zero uniform pairs.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]; log stays finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Exponential with rate 1 via inverse CDF.
  double exponential() { return -std::log(1.0 - uniform01()); }

  // Laplace(mu, b) via inverse CDF.
  double laplace(double mu, double b) {
    const double u = uniform01() - 0.5;  // [-0.5, 0.5)
    const double t = 1.0 - 2.0 * std::abs(u);
    // u == -0.5 would give log(0); nudge to the smallest representable draw.
    const double x = std::log(t > 0.0 ? t : 0x1.0p-53);
    return u < 0.0 ? mu + b * x : mu - b * x;
  }

  // Unbiased integer on [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Fisher-Yates shuffle driven by Rng::below, so permutations are seed-stable.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace preflens
