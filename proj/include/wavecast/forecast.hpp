#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wavecast/featureset.hpp"
#include "wavecast/metrics.hpp"
#include "wavecast/ridge.hpp"
#include "wavecast/transform.hpp"

namespace wavecast {

/// Ridge regularisation grid, ascending.
inline constexpr std::array<double, 11> kRidgeAlphaGrid = {
    1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

enum class FeatureSetKind { Lags, Ndwt, Nwpt };
enum class ModelKind { Ridge, Persistence };

FeatureSetKind parse_feature_set(std::string_view name);
ModelKind parse_model(std::string_view name);
std::string_view to_string(FeatureSetKind kind);  // lags | ndwt | nwpt
std::string_view to_string(ModelKind kind);       // ridge | persistence
std::string_view display_name(FeatureSetKind kind);
std::string_view display_name(ModelKind kind);

/// Contiguous [train | test] segments; the last valid_tail_len training
/// points score hyperparameters and wavelet numbers.
///
/// horizons == 1: one-step forecasts for every test point (each uses the
/// observations before it). horizons == H > 1: direct forecasts of
/// h = 1..H from the end of the training segment, one ridge model per h.
struct SplitSpec {
  std::size_t train_len = 0;
  std::size_t valid_tail_len = 0;
  std::size_t test_len = 0;
  int horizons = 1;
};

/// Throws std::invalid_argument describing the first inconsistency.
void validate(const SplitSpec& split, std::size_t series_length);

struct PipelineConfig {
  FeatureSetKind feature_set = FeatureSetKind::Lags;
  int levels = 5;
  int max_lag = 60;          // lags feature set
  int ndwt_lags = 10;        // lags per NDWT coefficient sequence
  int nwpt_lags = 1;         // lags per NWPT packet sequence
  std::optional<SelectorSpec> selector = SelectorSpec{SelectorMethod::RidgeTopK, 60, 1.0};
  std::vector<double> alpha_grid{kRidgeAlphaGrid.begin(), kRidgeAlphaGrid.end()};
  std::size_t buffer_budget = kDefaultBufferBudget;
};

/// Feature column count for a feature set before selection.
std::size_t feature_count(const PipelineConfig& pipeline, FeatureSetKind kind);

/// Builds the design for one wavelet number and horizon. Lags ignore the number.
using FeatureBuilder =
    std::function<FeatureMatrix(std::span<const double> series, int number, int horizon)>;

FeatureBuilder default_feature_builder(const PipelineConfig& pipeline);

std::vector<double> persistence_forecast(std::span<const double> train, int horizons);

/// Everything fitted on one training window and its out-of-window forecasts.
struct WindowFit {
  double alpha = 0.0;
  double smape_pct = 0.0;                 // NaN when the window is empty
  std::vector<double> smape_by_alpha;     // aligned with the alpha grid used
  std::vector<std::size_t> target_times;  // 1-based time of each forecast target
  std::vector<double> predictions;
  std::vector<double> actuals;
  std::vector<ZScore> scalers;            // one per horizon
  std::vector<Selection> selections;      // empty when no ridge selector
  std::vector<std::optional<PcaModel>> pcas;
  std::vector<std::vector<std::string>> kept_names;
  std::vector<RidgeModel> models;         // one per horizon, for the chosen alpha
};

/// Fits on rows whose target time is <= fit_limit and forecasts the next
/// `window` points (one-step) or h = 1..horizons from t = fit_limit (direct).
/// Every alpha in `alphas` is scored; the first minimum wins.
WindowFit fit_window(std::span<const double> series, int number, const PipelineConfig& pipeline,
                     const FeatureBuilder& builder, std::size_t fit_limit, std::size_t window,
                     int horizons, std::span<const double> alphas);

struct CandidateScore {
  int number = 0;
  double alpha = 0.0;
  double smape_pct = 0.0;
};

struct WaveletChoice {
  int number = 0;
  double alpha = 0.0;
  std::vector<CandidateScore> table;  // in ascending wavelet-number order
};

/// Scores each candidate on the validation tail (features built on the
/// series, models fitted on train minus tail) and returns the argmin;
/// equal scores go to the smaller number. Throws on an empty candidate set.
WaveletChoice cv_select_wavelet(std::span<const double> series, std::span<const int> candidates,
                                const PipelineConfig& pipeline, const SplitSpec& split,
                                const FeatureBuilder& builder = {});

struct SeriesInput {
  std::string name;
  std::vector<double> values;
};

struct ExperimentSpec {
  std::vector<SeriesInput> series;
  std::vector<ModelKind> models{ModelKind::Ridge, ModelKind::Persistence};
  std::vector<FeatureSetKind> feature_sets{FeatureSetKind::Lags, FeatureSetKind::Ndwt,
                                           FeatureSetKind::Nwpt};
  std::vector<int> candidates{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  PipelineConfig pipeline;
  SplitSpec split;
  int jobs = 1;
};

/// Throws std::invalid_argument before any computation on a bad spec.
void validate(const ExperimentSpec& spec);

struct CellResult {
  std::size_t series_index = 0;
  ModelKind model = ModelKind::Ridge;
  FeatureSetKind feature_set = FeatureSetKind::Lags;
  int wavelet_number = 0;  // 0 when not applicable
  double alpha = 0.0;      // NaN for persistence
  double smape_pct = 0.0;
  std::vector<CandidateScore> cv_table;
  std::vector<std::size_t> target_times;
  std::vector<double> predictions;
  std::vector<double> actuals;
  std::vector<std::string> selected;  // kept feature names for the first horizon
};

struct ReportRow {
  ModelKind model = ModelKind::Ridge;
  FeatureSetKind feature_set = FeatureSetKind::Lags;
  int modal_number = 0;  // 0 renders as "-"
  ScoreSummary summary;
};

struct ForecastReport {
  std::vector<ReportRow> rows;    // models x feature sets, model-major
  std::vector<CellResult> cells;  // series x models x feature sets, series-major
};

CellResult run_cell(const ExperimentSpec& spec, std::size_t series_index, ModelKind model,
                    FeatureSetKind feature_set);

/// Runs every (series, model, feature set) cell on up to spec.jobs threads and
/// assembles the report in a fixed order, so output does not depend on jobs.
ForecastReport run_experiment(const ExperimentSpec& spec);

void write_report_csv(std::ostream& out, const ForecastReport& report);
void write_report_table(std::ostream& out, const ForecastReport& report);
void write_per_series_csv(std::ostream& out, const ExperimentSpec& spec,
                          const ForecastReport& report);
void write_predictions_csv(std::ostream& out, const ExperimentSpec& spec,
                           const ForecastReport& report);
void write_cv_csv(std::ostream& out, const ExperimentSpec& spec, const ForecastReport& report);
void write_selection_csv(std::ostream& out, const ExperimentSpec& spec,
                         const ForecastReport& report);

}  // namespace wavecast
