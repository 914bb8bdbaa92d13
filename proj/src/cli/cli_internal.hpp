#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wavecast/forecast.hpp"

namespace wavecast::cli {

/// Bad flags or an inconsistent configuration (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ForecastOptions {
  std::vector<std::string> inputs;
  std::string kind = "heavisine";
  std::size_t length = 2000;
  double noise_sd = 0.5;
  std::uint64_t seed = 1;
  int replicates = 3;

  std::vector<std::string> models{"ridge", "persistence"};
  std::vector<std::string> feature_sets{"lags", "ndwt", "nwpt"};
  std::vector<int> candidates{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int levels = 5;
  int max_lag = 60;
  int ndwt_lags = 10;
  int nwpt_lags = 1;
  std::string selector = "ridge";
  int k = 60;
  double selector_alpha = 1.0;
  std::vector<double> alphas{kRidgeAlphaGrid.begin(), kRidgeAlphaGrid.end()};

  std::size_t train_len = 1800;
  std::size_t valid_tail = 200;
  std::size_t test_len = 200;
  int horizons = 1;
  std::size_t budget = kDefaultBufferBudget;
};

/// key=value lines in a fixed order; excludes run-only settings (jobs, output root).
std::string canonical_config(const ForecastOptions& options);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);

/// Loads or simulates the series and maps options onto an experiment. Throws
/// UsageError for configuration problems; CSV errors propagate as CsvError.
ExperimentSpec build_experiment(const ForecastOptions& options, int jobs);

/// Writes config, versions, inputs and every report artifact under `dir`.
void write_run_directory(const std::filesystem::path& dir, const ForecastOptions& options,
                         const ExperimentSpec& spec, const ForecastReport& report);

}  // namespace wavecast::cli
