#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace grassland {

// Seeded random stream. Draws are implemented on top of the raw 64-bit
// engine output so that results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Uniform on the closed interval [lo, hi].
  int uniform_int(int lo, int hi);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Independent child stream; consumes one draw from this stream.
  Rng split() { return Rng(mix(next())); }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

}  // namespace grassland
