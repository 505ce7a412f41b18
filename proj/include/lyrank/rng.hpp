#pragma once

#include <cmath>
#include <cstdint>

namespace lyrank {

/// SplitMix64. Every random draw in the pipeline comes from this generator
/// so that a seed reproduces identical output on every platform.
///
///   state += 0x9e3779b97f4a7c15
///   z = state
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to [0,1); below(n) uses rejection on the
/// largest multiple of n so that it is exactly uniform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [0, 1], both ends reachable.
  double uniform_closed() noexcept {
    return static_cast<double>(next() >> 11) / static_cast<double>((1ULL << 53) - 1);
  }

  /// Uniform integer in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Standard normal via Box-Muller (one value per call; the pair's
  /// second half is discarded to keep the stream position simple).
  double normal() noexcept {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

 private:
  std::uint64_t state_;
};

/// Independent substream seed for (seed, index), e.g. per fold or per
/// synthetic point.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 g(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  g.next();
  return g.next();
}

}  // namespace lyrank
