// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mmbeam {

// SplitMix64 finalizer, used to derive independent stream seeds from
// (master seed, tag...) tuples.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) ^ (0x9E3779B97F4A7C15ull + b));
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  return mix_seed(mix_seed(a, b), c);
}

// Deterministic random stream. All distributions are built directly on the
// raw mt19937_64 output (never std:: distributions, whose sequences are
// implementation-defined), so a seed pins the sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard real normal (Box-Muller, cosine branch).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(kTwoPi * u2);
  }

  // Circularly symmetric complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-std::log1p(-u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }

  // Unit-power QPSK symbol.
  std::complex<double> qpsk() {
    constexpr double a = 0.7071067811865476;  // 1/sqrt(2)
    switch (eng_() & 3u) {
      case 0: return {+a, +a};
      case 1: return {+a, -a};
      case 2: return {-a, +a};
      default: return {-a, -a};
    }
  }

  std::uint64_t bits() { return eng_(); }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::mt19937_64 eng_;
};

}  // namespace mmbeam
