// Index helpers for the degree thresholds that appear as real products such
// as (1 - delta)(n - 1).
#pragma once

#include <cmath>
#include <cstddef>

namespace ffh {

/// Values within this distance of an integer are treated as that integer.
inline constexpr double kIntegerSnap = 1e-9;

/// floor(x), snapping x to a nearby integer first so that products like
/// (1 - delta)(n - 1) that are integral in exact arithmetic floor correctly.
inline std::size_t floor_index(double x) {
  if (x <= 0.0) return 0;
  const double r = std::round(x);
  if (std::abs(x - r) <= kIntegerSnap * std::max(1.0, x)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::floor(x));
}

/// Whether the integer j is strictly below x, with the same snapping.
inline bool index_below(std::size_t j, double x) {
  const double r = std::round(x);
  const double snapped = std::abs(x - r) <= kIntegerSnap * std::max(1.0, std::abs(x)) ? r : x;
  return static_cast<double>(j) < snapped;
}

}  // namespace ffh
