#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace prreg {

// Stream purposes used to split a scenario seed into independent substreams.
enum class RngPurpose : std::uint64_t {
  Design = 1,
  Errors = 2,
  Permutations = 3,
  Envelope = 4,
};

// SplitMix64-based stream. The state is a hash of (seed, stream, purpose),
// so streams are independent of the order in which they are created and
// the output is identical on every platform (no std::*_distribution).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(mix(seed)) {}

  static RngStream from(std::uint64_t seed, std::uint64_t stream,
                        RngPurpose purpose) {
    RngStream r(0);
    r.state_ = mix(mix(mix(seed) + stream) + static_cast<std::uint64_t>(purpose));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased draw from {0, 1, ..., bound-1} by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t v = next_u64();
      if (v >= threshold) return v % bound;
    }
  }

  // Standard normal via Box-Muller (cosine branch; two uniforms per draw).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential() { return -std::log(uniform_pos()); }

  // Fisher-Yates shuffle of 0..n-1.
  std::vector<std::uint32_t> permutation(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace prreg
