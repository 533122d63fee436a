#include "vrc/frame.hpp"

#include <numeric>

namespace vrc {

size_t Mask::count() const {
  return std::accumulate(bits.begin(), bits.end(), size_t{0},
                         [](size_t a, uint8_t b) { return a + (b ? 1 : 0); });
}

double Mask::fraction() const {
  if (bits.empty()) return 0.0;
  return static_cast<double>(count()) / static_cast<double>(bits.size());
}

}  // namespace vrc
