#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace tbgp {

// Splittable deterministic random stream.
//
// Engine: splitmix64 (Steele, Lea, Flood 2014). A stream is a 64-bit key plus
// a counter-like state; `fork` derives a child stream by hashing
// (parent key, tag, indices...) without consuming parent state, so the stream
// reached by any (seed, tag-path) is the same regardless of draw order or
// worker scheduling. Every transform below is fixed by this header — given a
// seed, all outputs are identical across platforms and build modes:
//   next()          splitmix64: state += gamma; return mix(state)
//   uniform01()     top 53 bits of next() scaled by 2^-53, in [0, 1)
//   uniform_below() threshold-rejection on next(), unbiased in [0, n)
//   normal()        Box-Muller on two next() draws (pair variate discarded)
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : key_(mix(seed + kGamma)), state_(key_) {}

  // Child stream named by (tag, indices...). Const: does not advance *this.
  template <typename... Ix>
  RandomStream fork(std::string_view tag, Ix... idx) const {
    std::uint64_t h = mix(key_ ^ fnv1a(tag));
    ((h = mix(h + kGamma + static_cast<std::uint64_t>(idx))), ...);
    return RandomStream(h, h);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::domain_error("uniform_below needs n >= 1");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

  // One normal variate per call; always consumes exactly two engine steps.
  // sigma = 0 returns exactly mu.
  double normal(double mu, double sigma) {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;        // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * (r * std::cos(2.0 * kPi * u2));
  }

  std::uint64_t key() const { return key_; }

 private:
  RandomStream(std::uint64_t key, std::uint64_t state) : key_(key), state_(state) {}

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ull;
    }
    return h;
  }

  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace tbgp
