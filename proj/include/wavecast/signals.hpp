#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wavecast {

enum class SignalKind { Bumps, Doppler, Heavisine };

SignalKind parse_signal_kind(std::string_view name);
std::string_view to_string(SignalKind kind);

struct SignalSpec {
  SignalKind kind = SignalKind::Heavisine;
  std::size_t length = 0;
  double noise_sd = 0.0;
  std::uint64_t seed = 0;
};

// Donoho-Johnstone test functions on [0, 1].
double bumps(double t);
double doppler(double t);
double heavisine(double t);

/// Counter-based normal generator: sample i depends only on (seed, i).
///
/// Uniforms come from the SplitMix64 output sequence seeded with `seed`
/// (u_k from output k, top 53 bits, offset by half an ulp so u is in (0,1)).
/// Normal i is Box-Muller on (u_{2i}, u_{2i+1}): sqrt(-2 ln u) cos(2 pi v).
class CounterNormal {
 public:
  explicit CounterNormal(std::uint64_t seed) : seed_(seed) {}

  double uniform(std::uint64_t counter) const noexcept;
  double operator()(std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
};

/// Samples the clean function at t_i = i / T (i = 1..T) and adds iid
/// N(0, noise_sd^2) noise. Throws InsufficientData for T < 2 and
/// std::invalid_argument for negative or non-finite noise_sd.
std::vector<double> generate(const SignalSpec& spec);

}  // namespace wavecast
