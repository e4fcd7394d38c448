#include "heinzlab/trial_rng.hpp"

#include <cmath>

namespace heinzlab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kMix1 = 0xBF58476D1CE4E5B9ull;
constexpr std::uint64_t kMix2 = 0x94D049BB133111EBull;
constexpr std::uint64_t kStreamOffset = 0xD1342543DE82EF95ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::uint64_t TrialRng::finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= kMix1;
  z ^= z >> 27;
  z *= kMix2;
  z ^= z >> 31;
  return z;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream)
    : root_(finalize(finalize(seed + kGamma) ^ (stream * kMix2 + kStreamOffset))) {}

std::uint64_t TrialRng::bits(std::uint64_t k) const {
  return finalize(root_ + (k + 1) * kGamma);
}

double TrialRng::u01(std::uint64_t k) const {
  return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
}

void TrialRng::gaussian_pair(std::uint64_t k, double& z1, double& z2) const {
  double r = std::sqrt(-2.0 * std::log(u01_positive(k)));
  double theta = kTwoPi * u01(k + 1);
  z1 = r * std::cos(theta);
  z2 = r * std::sin(theta);
}

}  // namespace heinzlab
