#ifndef JSR_DETAIL_TIES_HPP
#define JSR_DETAIL_TIES_HPP

#include <algorithm>
#include <cmath>

namespace jsr::detail {

// Values within this relative distance count as equal when picking witnesses.
inline constexpr double kTieRelTol = 1e-12;

inline bool clearly_greater(double a, double b) {
  return a > b + kTieRelTol * std::max(std::abs(a), std::abs(b));
}

inline bool near_equal(double a, double b) {
  return !clearly_greater(a, b) && !clearly_greater(b, a);
}

}  // namespace jsr::detail

#endif  // JSR_DETAIL_TIES_HPP
