#pragma once

#include <algorithm>
#include <utility>

namespace timewise::detail {

// Interval of the given width around `mean`, shifted (not clipped) to stay in [0,1].
inline std::pair<double, double> centred_interval(double mean, double width) {
  width = std::clamp(width, 0.0, 1.0);
  const double low = std::clamp(mean - 0.5 * width, 0.0, 1.0 - width);
  return {low, low + width};
}

}  // namespace timewise::detail
