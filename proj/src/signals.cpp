#include "wavecast/signals.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wavecast/error.hpp"

namespace wavecast {

namespace {

constexpr std::array<double, 11> kBumpCentres = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                                                 0.44, 0.65, 0.76, 0.78, 0.81};
constexpr std::array<double, 11> kBumpHeights = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                                 2.1, 4.3, 3.1, 5.1, 4.2};
constexpr std::array<double, 11> kBumpWidths = {0.005, 0.005, 0.006, 0.010, 0.010, 0.030,
                                                0.010, 0.010, 0.005, 0.008, 0.005};

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SignalKind parse_signal_kind(std::string_view name) {
  if (name == "bumps") return SignalKind::Bumps;
  if (name == "doppler") return SignalKind::Doppler;
  if (name == "heavisine") return SignalKind::Heavisine;
  throw std::invalid_argument("unknown signal kind '" + std::string(name) +
                              "' (expected bumps, doppler or heavisine)");
}

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::Bumps:
      return "bumps";
    case SignalKind::Doppler:
      return "doppler";
    case SignalKind::Heavisine:
      return "heavisine";
  }
  return "unknown";
}

double bumps(double t) {
  double value = 0.0;
  for (std::size_t j = 0; j < kBumpCentres.size(); ++j) {
    const double u = std::abs((t - kBumpCentres[j]) / kBumpWidths[j]);
    value += kBumpHeights[j] * std::pow(1.0 + u, -4.0);
  }
  return value;
}

double doppler(double t) {
  return std::sqrt(t * (1.0 - t)) * std::sin(2.0 * std::numbers::pi * 1.05 / (t + 0.05));
}

double heavisine(double t) {
  return 4.0 * std::sin(4.0 * std::numbers::pi * t) - sign(t - 0.3) - sign(0.72 - t);
}

double CounterNormal::uniform(std::uint64_t counter) const noexcept {
  const std::uint64_t bits = splitmix64(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterNormal::operator()(std::uint64_t index) const noexcept {
  const double u = uniform(2 * index);
  const double v = uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::vector<double> generate(const SignalSpec& spec) {
  if (spec.length < 2) throw InsufficientData("signal length must be >= 2", 2);
  if (!(spec.noise_sd >= 0.0) || !std::isfinite(spec.noise_sd)) {
    throw std::invalid_argument("noise sd must be finite and >= 0");
  }
  double (*clean)(double) = nullptr;
  switch (spec.kind) {
    case SignalKind::Bumps:
      clean = bumps;
      break;
    case SignalKind::Doppler:
      clean = doppler;
      break;
    case SignalKind::Heavisine:
      clean = heavisine;
      break;
  }

  const CounterNormal noise(spec.seed);
  const auto length = static_cast<double>(spec.length);
  std::vector<double> out(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) {
    out[i] = clean(static_cast<double>(i + 1) / length);
    if (spec.noise_sd > 0.0) out[i] += spec.noise_sd * noise(i);
  }
  return out;
}

}  // namespace wavecast
