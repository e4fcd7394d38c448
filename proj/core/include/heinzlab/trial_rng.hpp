#pragma once

#include <cstdint>

namespace heinzlab {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so trial substreams can be evaluated in any order
// and reproduced in any language from the constants below.
//
//   F(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//         z ^= z >> 27; z *= 0x94D049BB133111EB
//         z ^= z >> 31                       (the SplitMix64 finalizer)
//   root(seed, stream) = F(F(seed + 0x9E3779B97F4A7C15)
//                          ^ (stream * 0x94D049BB133111EB + 0xD1342543DE82EF95))
//   draw(seed, stream, k) = F(root + (k + 1) * 0x9E3779B97F4A7C15)
//   u01 = (draw >> 11) * 2^-53                               in [0, 1)
//   gauss pair: r = sqrt(-2 ln(1 - u01(2k))), theta = 2 pi u01(2k+1),
//               (r cos theta, r sin theta)
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);

  /// Raw 64-bit draw at counter position k.
  std::uint64_t bits(std::uint64_t k) const;

  /// Uniform double in [0, 1) at counter position k.
  double u01(std::uint64_t k) const;

  /// Uniform double in (0, 1] at counter position k.
  double u01_positive(std::uint64_t k) const { return 1.0 - u01(k); }

  /// Standard normal pair from counters (k, k+1).
  void gaussian_pair(std::uint64_t k, double& z1, double& z2) const;

  static std::uint64_t finalize(std::uint64_t z);

 private:
  std::uint64_t root_;
};

}  // namespace heinzlab
