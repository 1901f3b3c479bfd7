#pragma once

#include <cmath>
#include <cstdint>

namespace acl {

// Seedable splittable PRNG (SplitMix64 family: Weyl sequence + avalanche
// finalizer). A stream is identified by (seed, stream_id); equal pairs
// reproduce the same sequence, distinct stream_ids give statistically
// independent sequences. Streams are 16 bytes and cheap to fork, which is
// what the chunked Monte Carlo reductions rely on.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    state_ = mix64(seed ^ mix64(stream_id + 0x9E3779B97F4A7C15ull));
    gamma_ = mix64(mix64(stream_id) ^ ~seed) | 1ull;  // odd Weyl increment
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Independent child stream, used for chunk k of a reduction.
  RngStream substream(std::uint64_t k) const {
    return RngStream(seed_, mix64(stream_id_ ^ (k + 1) * 0xD1B54A32D192ED03ull));
  }

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller with the second variate cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  std::uint64_t gamma_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace acl
