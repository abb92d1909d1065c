#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

namespace aqim {

namespace detail {

// Finalizer of the splitmix64 generator; a good 64-bit mixing function.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t combine64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) + 0x9e3779b97f4a7c15ull * b);
}

}  // namespace detail

/// Seeded, splittable random stream. A stream is identified by (seed,
/// stream_id); the same pair always produces the same draw sequence on a
/// given platform. split() derives statistically independent child streams,
/// so Monte Carlo loops can hand one stream per sample and stay
/// reproducible under any worker partition.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed),
        stream_(stream_id),
        engine_(detail::combine64(seed, stream_id)) {}

  RngStream split(std::uint64_t substream) const {
    return RngStream(seed_, detail::combine64(stream_, substream + 1));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard complex Gaussian with independent N(0,1) real and imaginary
  /// parts (Box-Muller, two uniforms per draw).
  std::complex<double> gaussian_complex() {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 2.0 * pi() * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  double gaussian() { return gaussian_complex().real(); }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  static constexpr double pi() { return 3.14159265358979323846; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace aqim
