#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavecast {

inline constexpr int kMinWaveletNumber = 1;
inline constexpr int kMaxWaveletNumber = 10;

/// Daubechies extremal-phase low-pass taps `h` and the matching high-pass
/// taps `g`, both indexed on the causal window n = 0..W-1 with W = 2 * number.
///
/// The high-pass filter is obtained from `mirror(h)`, i.e.
/// g_n = (-1)^n h_{W-1-n}. Relative to the textbook form g_n = (-1)^n h_{1-n}
/// this is a shift by W-2 samples, so detail coefficients may carry the
/// opposite global sign to the classical Haar differencing (y_{2k}-y_{2k-1}).
struct FilterPair {
  int number = 0;
  std::vector<double> h;
  std::vector<double> g;

  std::size_t width() const noexcept { return h.size(); }
};

/// Throws UnsupportedWavelet unless 1 <= number <= 10.
FilterPair daubechies_filter(int number);

/// g_n = (-1)^n h_{W-1-n}. Applying twice returns (-1)^{W-1} h.
std::vector<double> mirror(std::span<const double> h);

}  // namespace wavecast
