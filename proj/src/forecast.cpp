#include "wavecast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wavecast/csv.hpp"
#include "wavecast/error.hpp"

namespace wavecast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses_wavelets(FeatureSetKind kind) { return kind != FeatureSetKind::Lags; }

int lags_for(const PipelineConfig& pipeline, FeatureSetKind kind) {
  switch (kind) {
    case FeatureSetKind::Lags:
      return pipeline.max_lag;
    case FeatureSetKind::Ndwt:
      return pipeline.ndwt_lags;
    case FeatureSetKind::Nwpt:
      return pipeline.nwpt_lags;
  }
  return 0;
}

Mode mode_for(FeatureSetKind kind) {
  return kind == FeatureSetKind::Nwpt ? Mode::Nwpt : Mode::Ndwt;
}

// Design rows prepared for one horizon: standardised, then reduced.
struct PreparedHorizon {
  FeatureMatrix train;
  FeatureMatrix eval;
  ZScore scaler;
  std::optional<Selection> selection;
  std::optional<PcaModel> pca;
};

PreparedHorizon prepare(const FeatureMatrix& design, const PipelineConfig& pipeline,
                        std::size_t fit_limit, std::size_t window, int horizon, bool multi) {
  const auto h = static_cast<std::size_t>(horizon);
  std::vector<Eigen::Index> fit_rows;
  std::vector<Eigen::Index> eval_rows;
  for (std::size_t r = 0; r < design.times.size(); ++r) {
    const std::size_t t = design.times[r];
    const auto row = static_cast<Eigen::Index>(r);
    if (t + h <= fit_limit) {
      fit_rows.push_back(row);
    } else if (multi ? (t == fit_limit && h <= window)
                     : (t + h > fit_limit && t + h <= fit_limit + window)) {
      eval_rows.push_back(row);
    }
  }
  if (fit_rows.empty()) {
    throw InsufficientData("no training rows before t=" + std::to_string(fit_limit),
                           design.times.empty() ? fit_limit : design.times.front() + h);
  }

  PreparedHorizon out;
  out.train = select_rows(design, fit_rows);
  out.eval = select_rows(design, eval_rows);
  out.scaler = ZScore::fit(out.train.values);
  out.train.values = out.scaler.apply(out.train.values);
  out.eval.values = out.scaler.apply(out.eval.values);

  if (pipeline.selector && uses_wavelets(pipeline.feature_set)) {
    const SelectorSpec& spec = *pipeline.selector;
    if (spec.method == SelectorMethod::RidgeTopK) {
      out.selection = ridge_topk_select(out.train, spec);
      out.train = select_columns(out.train, out.selection->kept());
      out.eval = select_columns(out.eval, out.selection->kept());
    } else {
      out.pca = pca_topk(out.train.values, spec.k);
      out.train = project(out.train, *out.pca);
      out.eval = project(out.eval, *out.pca);
    }
  }
  return out;
}

}  // namespace

FeatureSetKind parse_feature_set(std::string_view name) {
  if (name == "lags") return FeatureSetKind::Lags;
  if (name == "ndwt") return FeatureSetKind::Ndwt;
  if (name == "nwpt") return FeatureSetKind::Nwpt;
  throw std::invalid_argument("unknown feature set '" + std::string(name) +
                              "' (supported: lags, ndwt, nwpt)");
}

ModelKind parse_model(std::string_view name) {
  if (name == "ridge") return ModelKind::Ridge;
  if (name == "persistence") return ModelKind::Persistence;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (supported: ridge, persistence)");
}

std::string_view to_string(FeatureSetKind kind) {
  switch (kind) {
    case FeatureSetKind::Lags:
      return "lags";
    case FeatureSetKind::Ndwt:
      return "ndwt";
    case FeatureSetKind::Nwpt:
      return "nwpt";
  }
  return "unknown";
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Ridge ? "ridge" : "persistence";
}

std::string_view display_name(FeatureSetKind kind) {
  switch (kind) {
    case FeatureSetKind::Lags:
      return "Lags";
    case FeatureSetKind::Ndwt:
      return "NDWT";
    case FeatureSetKind::Nwpt:
      return "NWPT";
  }
  return "unknown";
}

std::string_view display_name(ModelKind kind) {
  return kind == ModelKind::Ridge ? "Ridge" : "Persistence";
}

void validate(const SplitSpec& split, std::size_t series_length) {
  if (split.train_len == 0) throw std::invalid_argument("train length must be >= 1");
  if (split.valid_tail_len == 0) throw std::invalid_argument("validation tail must be >= 1");
  if (split.valid_tail_len >= split.train_len) {
    throw std::invalid_argument("validation tail must be shorter than the training segment");
  }
  if (split.test_len == 0) throw std::invalid_argument("test length must be >= 1");
  if (split.horizons < 1) throw std::invalid_argument("horizons must be >= 1");
  const auto h = static_cast<std::size_t>(split.horizons);
  if (h > 1 && (h > split.valid_tail_len || h > split.test_len)) {
    throw std::invalid_argument("horizons must not exceed the validation tail or test length");
  }
  if (series_length < split.train_len + split.test_len) {
    throw InsufficientData("series of length " + std::to_string(series_length) +
                               " cannot hold train + test",
                           split.train_len + split.test_len);
  }
}

std::size_t feature_count(const PipelineConfig& pipeline, FeatureSetKind kind) {
  const auto lags = static_cast<std::size_t>(lags_for(pipeline, kind));
  const auto levels = static_cast<std::size_t>(pipeline.levels);
  switch (kind) {
    case FeatureSetKind::Lags:
      return lags;
    case FeatureSetKind::Ndwt:
      return (levels + 2) * lags;
    case FeatureSetKind::Nwpt:
      return (packet_count(pipeline.levels) + 1) * lags;
  }
  return 0;
}

FeatureBuilder default_feature_builder(const PipelineConfig& pipeline) {
  return [pipeline](std::span<const double> series, int number, int horizon) {
    const FeatureSetKind kind = pipeline.feature_set;
    if (kind == FeatureSetKind::Lags) return lag_matrix(series, pipeline.max_lag, horizon);
    const TransformConfig config =
        make_config(mode_for(kind), number, pipeline.levels, pipeline.buffer_budget);
    return coefficient_features(series, config, lags_for(pipeline, kind), horizon);
  };
}

std::vector<double> persistence_forecast(std::span<const double> train, int horizons) {
  if (train.empty()) throw std::invalid_argument("persistence needs a non-empty training series");
  if (horizons < 1) throw std::invalid_argument("horizons must be >= 1");
  return std::vector<double>(static_cast<std::size_t>(horizons), train.back());
}

WindowFit fit_window(std::span<const double> series, int number, const PipelineConfig& pipeline,
                     const FeatureBuilder& builder, std::size_t fit_limit, std::size_t window,
                     int horizons, std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  const bool multi = horizons > 1;

  std::vector<PreparedHorizon> prepared;
  for (int h = 1; h <= horizons; ++h) {
    prepared.push_back(prepare(builder(series, number, h), pipeline, fit_limit, window, h, multi));
  }

  WindowFit fit;
  for (const auto& p : prepared) {
    for (Eigen::Index r = 0; r < p.eval.rows(); ++r) {
      fit.target_times.push_back(p.eval.times[static_cast<std::size_t>(r)] +
                                 static_cast<std::size_t>(p.eval.horizon));
      fit.actuals.push_back(p.eval.target(r));
    }
  }

  auto forecast = [&](double alpha, std::vector<RidgeModel>* models) {
    std::vector<double> predictions;
    for (const auto& p : prepared) {
      RidgeModel model = ridge_fit(p.train.values, p.train.target, alpha);
      if (p.eval.rows() > 0) {
        const Eigen::VectorXd yhat = model.predict(p.eval.values);
        predictions.insert(predictions.end(), yhat.begin(), yhat.end());
      }
      if (models) models->push_back(std::move(model));
    }
    return predictions;
  };

  std::size_t best = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const std::vector<double> predictions = forecast(alphas[i], nullptr);
    const double score = fit.actuals.empty() ? kNaN : smape(predictions, fit.actuals);
    fit.smape_by_alpha.push_back(score);
    if (score < fit.smape_by_alpha[best]) best = i;
  }
  fit.alpha = alphas[best];
  fit.smape_pct = fit.smape_by_alpha[best];
  fit.predictions = forecast(fit.alpha, &fit.models);

  for (auto& p : prepared) {
    fit.scalers.push_back(std::move(p.scaler));
    if (p.selection) fit.selections.push_back(std::move(*p.selection));
    fit.pcas.push_back(std::move(p.pca));
    fit.kept_names.push_back(p.train.names);
  }
  return fit;
}

WaveletChoice cv_select_wavelet(std::span<const double> series, std::span<const int> candidates,
                                const PipelineConfig& pipeline, const SplitSpec& split,
                                const FeatureBuilder& builder) {
  if (candidates.empty()) throw std::invalid_argument("no candidate wavelet numbers");
  for (int number : candidates) {
    if (number < kMinWaveletNumber || number > kMaxWaveletNumber) throw UnsupportedWavelet(number);
  }
  if (split.valid_tail_len == 0 || split.valid_tail_len >= split.train_len) {
    throw std::invalid_argument("validation tail must be in 1..train_len-1");
  }
  if (series.size() < split.train_len) {
    throw InsufficientData("series shorter than the training segment", split.train_len);
  }
  const FeatureBuilder& build = builder ? builder : default_feature_builder(pipeline);
  const std::set<int> ordered(candidates.begin(), candidates.end());
  const std::size_t fit_limit = split.train_len - split.valid_tail_len;

  WaveletChoice choice;
  for (int number : ordered) {
    const WindowFit fit = fit_window(series, number, pipeline, build, fit_limit,
                                     split.valid_tail_len, split.horizons, pipeline.alpha_grid);
    choice.table.push_back({number, fit.alpha, fit.smape_pct});
  }
  const auto best = std::min_element(
      choice.table.begin(), choice.table.end(),
      [](const CandidateScore& a, const CandidateScore& b) { return a.smape_pct < b.smape_pct; });
  choice.number = best->number;
  choice.alpha = best->alpha;
  return choice;
}

void validate(const ExperimentSpec& spec) {
  if (spec.series.empty()) throw std::invalid_argument("no input series");
  if (spec.models.empty()) throw std::invalid_argument("no models requested");
  if (spec.feature_sets.empty()) throw std::invalid_argument("no feature sets requested");
  if (std::set(spec.models.begin(), spec.models.end()).size() != spec.models.size()) {
    throw std::invalid_argument("duplicate model");
  }
  if (std::set(spec.feature_sets.begin(), spec.feature_sets.end()).size() !=
      spec.feature_sets.size()) {
    throw std::invalid_argument("duplicate feature set");
  }
  if (spec.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  const PipelineConfig& p = spec.pipeline;
  if (p.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (p.max_lag < 1 || p.ndwt_lags < 1 || p.nwpt_lags < 1) {
    throw std::invalid_argument("lag counts must be >= 1");
  }
  if (p.alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
  for (double alpha : p.alpha_grid) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alphas must be > 0");
  }

  const bool ridge = std::find(spec.models.begin(), spec.models.end(), ModelKind::Ridge) !=
                     spec.models.end();
  for (const auto& series : spec.series) {
    validate(spec.split, series.values.size());
    for (double v : series.values) {
      if (!std::isfinite(v)) throw NonFiniteInput("series '" + series.name + "' has non-finite values");
    }
  }
  if (!ridge) return;

  const std::size_t fit_limit = spec.split.train_len - spec.split.valid_tail_len;
  for (FeatureSetKind kind : spec.feature_sets) {
    const auto need = static_cast<std::size_t>(lags_for(p, kind)) +
                      static_cast<std::size_t>(spec.split.horizons);
    if (fit_limit < need + 1) {
      throw InsufficientData("train minus validation tail too short for " +
                                 std::string(to_string(kind)) + " features",
                             need + 1 + spec.split.valid_tail_len);
    }
    if (!uses_wavelets(kind)) continue;
    if (spec.candidates.empty()) throw std::invalid_argument("no candidate wavelet numbers");
    for (int number : spec.candidates) make_config(mode_for(kind), number, p.levels, p.buffer_budget);
    if (p.selector) {
      const auto available = static_cast<int>(feature_count(p, kind));
      const int limit = p.selector->method == SelectorMethod::PcaTopK
                            ? std::min<int>(available, static_cast<int>(fit_limit) - 1)
                            : available;
      if (p.selector->k < 1 || p.selector->k > limit) {
        throw std::invalid_argument("selector k=" + std::to_string(p.selector->k) + " outside 1.." +
                                    std::to_string(limit) + " for " + std::string(to_string(kind)));
      }
      if (p.selector->method == SelectorMethod::RidgeTopK && !(p.selector->alpha > 0.0)) {
        throw std::invalid_argument("selector alpha must be > 0");
      }
    }
  }
}

CellResult run_cell(const ExperimentSpec& spec, std::size_t series_index, ModelKind model,
                    FeatureSetKind feature_set) {
  const std::vector<double>& series = spec.series[series_index].values;
  const SplitSpec& split = spec.split;
  const bool multi = split.horizons > 1;

  CellResult cell;
  cell.series_index = series_index;
  cell.model = model;
  cell.feature_set = feature_set;

  if (model == ModelKind::Persistence) {
    cell.alpha = kNaN;
    if (multi) {
      cell.predictions = persistence_forecast(std::span(series).first(split.train_len), split.horizons);
      for (int h = 1; h <= split.horizons; ++h) {
        const std::size_t t = split.train_len + static_cast<std::size_t>(h);
        cell.target_times.push_back(t);
        cell.actuals.push_back(series[t - 1]);
      }
    } else {
      for (std::size_t t = split.train_len + 1; t <= split.train_len + split.test_len; ++t) {
        cell.target_times.push_back(t);
        cell.predictions.push_back(series[t - 2]);
        cell.actuals.push_back(series[t - 1]);
      }
    }
    cell.smape_pct = smape(cell.predictions, cell.actuals);
    return cell;
  }

  PipelineConfig pipeline = spec.pipeline;
  pipeline.feature_set = feature_set;
  const FeatureBuilder builder = default_feature_builder(pipeline);
  // Keep the design limited to train + test so longer inputs behave identically.
  const std::span<const double> window =
      std::span(series).first(split.train_len + split.test_len);

  int number = 0;
  double alpha = 0.0;
  if (uses_wavelets(feature_set)) {
    const WaveletChoice choice = cv_select_wavelet(window, spec.candidates, pipeline, split, builder);
    number = choice.number;
    alpha = choice.alpha;
    cell.cv_table = choice.table;
  } else {
    const WindowFit tuning =
        fit_window(window, 0, pipeline, builder, split.train_len - split.valid_tail_len,
                   split.valid_tail_len, split.horizons, pipeline.alpha_grid);
    alpha = tuning.alpha;
  }

  // Normalisation and selection are refitted on the whole training segment.
  const double chosen[] = {alpha};
  WindowFit final_fit = fit_window(window, number, pipeline, builder, split.train_len,
                                   split.test_len, split.horizons, chosen);
  cell.wavelet_number = number;
  cell.alpha = alpha;
  cell.smape_pct = final_fit.smape_pct;
  cell.target_times = std::move(final_fit.target_times);
  cell.predictions = std::move(final_fit.predictions);
  cell.actuals = std::move(final_fit.actuals);
  cell.selected = final_fit.kept_names.front();
  return cell;
}

ForecastReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const std::size_t models = spec.models.size();
  const std::size_t sets = spec.feature_sets.size();
  const std::size_t total = spec.series.size() * models * sets;

  ForecastReport report;
  report.cells.resize(total);
  std::vector<std::exception_ptr> errors(total);

#pragma omp parallel for schedule(dynamic) num_threads(spec.jobs)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
    const auto index = static_cast<std::size_t>(i);
    const std::size_t series_index = index / (models * sets);
    const std::size_t model = (index / sets) % models;
    const std::size_t set = index % sets;
    try {
      report.cells[index] =
          run_cell(spec, series_index, spec.models[model], spec.feature_sets[set]);
    } catch (...) {
      errors[index] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  for (std::size_t m = 0; m < models; ++m) {
    for (std::size_t f = 0; f < sets; ++f) {
      ReportRow row;
      row.model = spec.models[m];
      row.feature_set = spec.feature_sets[f];
      std::vector<double> scores;
      std::map<int, int> votes;
      for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const CellResult& cell = report.cells[(s * models + m) * sets + f];
        scores.push_back(cell.smape_pct);
        if (cell.wavelet_number > 0) ++votes[cell.wavelet_number];
      }
      row.summary = summarize(scores);
      int best_votes = 0;
      for (const auto& [number, count] : votes) {  // ascending, so ties keep the smaller number
        if (count > best_votes) {
          best_votes = count;
          row.modal_number = number;
        }
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const ForecastReport& report) {
  out << "Model,Feature Set,Modal Wavelet Number,Mean SMAPE %,SE,n\n";
  for (const auto& row : report.rows) {
    out << display_name(row.model) << ',' << display_name(row.feature_set) << ','
        << (row.modal_number > 0 ? std::to_string(row.modal_number) : "-") << ','
        << format_number(row.summary.mean_smape_pct) << ',' << format_number(row.summary.se_pct)
        << ',' << row.summary.n << '\n';
  }
}

void write_report_table(std::ostream& out, const ForecastReport& report) {
  const std::vector<std::string> header = {"Model", "Feature Set", "Modal Wavelet Number",
                                           "Mean SMAPE % (SE)"};
  std::vector<std::vector<std::string>> lines;
  for (const auto& row : report.rows) {
    std::ostringstream score;
    score << std::fixed << std::setprecision(2) << row.summary.mean_smape_pct << " (";
    if (std::isnan(row.summary.se_pct)) {
      score << '-';
    } else {
      score << row.summary.se_pct;
    }
    score << ')';
    lines.push_back({std::string(display_name(row.model)), std::string(display_name(row.feature_set)),
                     row.modal_number > 0 ? std::to_string(row.modal_number) : "-", score.str()});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& line : lines) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c == 0 ? "| " : " | ") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    out << " |\n";
  };
  auto rule = [&] {
    for (std::size_t c = 0; c < width.size(); ++c) out << (c == 0 ? "|-" : "-|-") << std::string(width[c], '-');
    out << "-|\n";
  };
  emit(header);
  rule();
  for (const auto& line : lines) emit(line);
}

void write_per_series_csv(std::ostream& out, const ExperimentSpec& spec,
                          const ForecastReport& report) {
  out << "series,model,feature_set,wavelet_number,alpha,smape_pct\n";
  for (const auto& cell : report.cells) {
    out << spec.series[cell.series_index].name << ',' << to_string(cell.model) << ','
        << to_string(cell.feature_set) << ','
        << (cell.wavelet_number > 0 ? std::to_string(cell.wavelet_number) : "") << ','
        << format_number(cell.alpha) << ',' << format_number(cell.smape_pct) << '\n';
  }
}

void write_predictions_csv(std::ostream& out, const ExperimentSpec& spec,
                           const ForecastReport& report) {
  out << "series,model,feature_set,target_t,actual,predicted\n";
  for (const auto& cell : report.cells) {
    for (std::size_t i = 0; i < cell.predictions.size(); ++i) {
      out << spec.series[cell.series_index].name << ',' << to_string(cell.model) << ','
          << to_string(cell.feature_set) << ',' << cell.target_times[i] << ','
          << format_number(cell.actuals[i]) << ',' << format_number(cell.predictions[i]) << '\n';
    }
  }
}

void write_cv_csv(std::ostream& out, const ExperimentSpec& spec, const ForecastReport& report) {
  out << "series,feature_set,wavelet_number,alpha,smape_pct\n";
  for (const auto& cell : report.cells) {
    for (const auto& row : cell.cv_table) {
      out << spec.series[cell.series_index].name << ',' << to_string(cell.feature_set) << ','
          << row.number << ',' << format_number(row.alpha) << ',' << format_number(row.smape_pct)
          << '\n';
    }
  }
}

void write_selection_csv(std::ostream& out, const ExperimentSpec& spec,
                         const ForecastReport& report) {
  out << "series,feature_set,rank,feature\n";
  for (const auto& cell : report.cells) {
    if (cell.model != ModelKind::Ridge) continue;
    for (std::size_t i = 0; i < cell.selected.size(); ++i) {
      out << spec.series[cell.series_index].name << ',' << to_string(cell.feature_set) << ','
          << (i + 1) << ',' << cell.selected[i] << '\n';
    }
  }
}

}  // namespace wavecast
