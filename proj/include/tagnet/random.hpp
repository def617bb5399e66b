#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tagnet {

// Seeded source used by every randomized routine. The engine is the
// standard-specified mt19937_64, and the integer/real conversions below are
// written out so draws are identical on every platform (the standard
// distributions are implementation-defined).
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tagnet
