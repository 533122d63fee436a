#pragma once

#include <cstdint>
#include <random>

namespace vrc {

// Deterministic RNG for gameplay draws. mt19937_64 output is fully specified
// by the standard, and the unit-interval mapping below avoids the
// implementation-defined std::uniform_real_distribution, so sequences are
// reproducible across platforms.
class DetRng {
 public:
  explicit DetRng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vrc
