#pragma once

#include <cstddef>
#include <numbers>
#include <span>

namespace wavecast::detail {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

// sum_n taps[n] * x_{t - spacing (W-1-n)}, with `read(lag)` returning x_{t-lag}.
// Serial and parallel paths both go through here so their results agree bit for bit.
template <class Read>
inline double causal_tap(std::span<const double> taps, std::size_t spacing, Read&& read) {
  const std::size_t last = taps.size() - 1;
  double acc = 0.0;
  for (std::size_t n = 0; n < taps.size(); ++n) {
    acc += taps[n] * read(spacing * (last - n));
  }
  return acc;
}

}  // namespace wavecast::detail
