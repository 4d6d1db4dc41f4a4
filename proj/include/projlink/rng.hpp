#pragma once

#include <cmath>
#include <cstdint>

#include "projlink/core.hpp"

namespace projlink {

// Deterministic, platform-independent random source. We avoid <random>'s
// distributions because their output is implementation-defined; reports
// promise byte-identical reruns for a given seed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  /// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
  cxd cgauss() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  CVec cgauss_vec(std::size_t n) {
    CVec v(n);
    for (auto& x : v) x = cgauss();
    return v;
  }
};

/// Mixes a base seed with stream indices so that every (task, index) pair
/// gets an independent deterministic stream.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  SplitMix64 m(base ^ (a * 0xd1342543de82ef95ULL) ^
               (b * 0xaf251af3b0f025b5ULL) ^ (c * 0x9e6c63d0876a9a43ULL));
  m.next();
  return m.next();
}

}  // namespace projlink
