#ifndef IMPRIOR_RNG_HPP
#define IMPRIOR_RNG_HPP

#include <cmath>
#include <cstdint>

namespace imprior {

/// splitmix64 finalizer, used to decorrelate stream descriptors.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Immutable descriptor of a reproducible random stream. Identical
/// (seed, stream_id) pairs reproduce identical sequences; distinct pairs give
/// statistically independent streams.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Derives a child stream; deterministic and collision-resistant in k.
  RngStream substream(std::uint64_t k) const {
    return {seed, mix64(stream_id ^ mix64(k))};
  }
};

/// PCG32: 64-bit state, stream selected through the (odd) increment.
class Pcg32 {
 public:
  explicit Pcg32(RngStream s) {
    inc_ = (mix64(s.stream_id) << 1u) | 1u;
    state_ = 0;
    next_u32();
    state_ += mix64(s.seed);
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on (0,1) with 53-bit resolution, endpoints excluded.
  double uniform01() {
    const std::uint64_t r = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one value per call, no cached spare).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692 * u2);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  long long binomial(long long n, double p) {
    long long k = 0;
    for (long long i = 0; i < n; ++i) k += bernoulli(p);
    return k;
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

}  // namespace imprior

#endif
