#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "wavecast/error.hpp"
#include "wavecast/forecast.hpp"
#include "wavecast/signals.hpp"

using namespace wavecast;

namespace {

PipelineConfig small_pipeline(FeatureSetKind kind) {
  PipelineConfig p;
  p.feature_set = kind;
  p.levels = 3;
  p.max_lag = 10;
  p.ndwt_lags = 3;
  p.nwpt_lags = 1;
  p.selector = SelectorSpec{SelectorMethod::RidgeTopK, 8, 1.0};
  return p;
}

SplitSpec small_split() { return {300, 60, 100, 1}; }

std::vector<double> noisy_heavisine(std::uint64_t seed, std::size_t length = 400) {
  return generate({SignalKind::Heavisine, length, 0.3, seed});
}

ExperimentSpec small_experiment(std::size_t replicates) {
  ExperimentSpec spec;
  for (std::uint64_t s = 1; s <= replicates; ++s) {
    spec.series.push_back({"s" + std::to_string(s), noisy_heavisine(s)});
  }
  spec.candidates = {1, 2, 3};
  spec.pipeline = small_pipeline(FeatureSetKind::Lags);
  spec.split = small_split();
  return spec;
}

}  // namespace

TEST_CASE("persistence") {
  CHECK(persistence_forecast(std::vector<double>{1, 4, 7}, 3) == std::vector<double>{7, 7, 7});
  CHECK(persistence_forecast(std::vector<double>{2}, 1) == std::vector<double>{2});
  CHECK_THROWS(persistence_forecast(std::vector<double>{}, 1));

  ExperimentSpec spec;
  spec.series.push_back({"flat", std::vector<double>(100, 4.0)});
  spec.models = {ModelKind::Persistence};
  spec.feature_sets = {FeatureSetKind::Lags};
  spec.split = {60, 10, 40, 1};
  CHECK(run_experiment(spec).rows[0].summary.mean_smape_pct == 0.0);
}

TEST_CASE("split validation") {
  CHECK_NOTHROW(validate(SplitSpec{10, 2, 5, 1}, 15));
  CHECK_THROWS_AS(validate(SplitSpec{10, 2, 5, 1}, 14), InsufficientData);
  CHECK_THROWS_AS(validate(SplitSpec{10, 10, 5, 1}, 20), std::invalid_argument);
  CHECK_THROWS_AS(validate(SplitSpec{10, 0, 5, 1}, 20), std::invalid_argument);
  CHECK_THROWS_AS(validate(SplitSpec{10, 2, 0, 1}, 20), std::invalid_argument);
  CHECK_THROWS_AS(validate(SplitSpec{10, 2, 5, 3}, 20), std::invalid_argument);
}

TEST_CASE("cv_select_wavelet contracts") {
  const auto y = noisy_heavisine(3);
  const auto pipeline = small_pipeline(FeatureSetKind::Ndwt);
  const auto split = small_split();

  SUBCASE("singleton") {
    const int only[] = {7};
    const auto choice = cv_select_wavelet(y, only, pipeline, split);
    CHECK(choice.number == 7);
    CHECK(choice.table.size() == 1);
  }
  SUBCASE("argmin of the recorded table") {
    const int candidates[] = {4, 1, 2, 3};
    const auto choice = cv_select_wavelet(y, candidates, pipeline, split);
    REQUIRE(choice.table.size() == 4);
    double best = choice.table[0].smape_pct;
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(choice.table[i].number == static_cast<int>(i) + 1);
      best = std::min(best, choice.table[i].smape_pct);
    }
    for (const auto& row : choice.table) {
      if (row.number == choice.number) CHECK(row.smape_pct == best);
    }
  }
  SUBCASE("identical pipelines tie to the smaller number") {
    const FeatureBuilder same = [](std::span<const double> s, int, int h) {
      return coefficient_features(s, make_config(Mode::Ndwt, 2, 3), 3, h);
    };
    const int candidates[] = {9, 5, 6};
    const auto choice = cv_select_wavelet(y, candidates, pipeline, split, same);
    CHECK(choice.table[0].smape_pct == choice.table[1].smape_pct);
    CHECK(choice.table[1].smape_pct == choice.table[2].smape_pct);
    CHECK(choice.number == 5);
  }
  SUBCASE("positive rescaling leaves the table unchanged") {
    const int candidates[] = {1, 2, 3, 4};
    const auto base = cv_select_wavelet(y, candidates, pipeline, split);
    for (double a : {0.001, 3.0, 250.0}) {
      std::vector<double> scaled(y);
      for (auto& v : scaled) v *= a;
      const auto moved = cv_select_wavelet(scaled, candidates, pipeline, split);
      CHECK(moved.number == base.number);
      for (std::size_t i = 0; i < base.table.size(); ++i) {
        CHECK(std::abs(moved.table[i].smape_pct - base.table[i].smape_pct) < 1e-8);
      }
    }
  }
  SUBCASE("test segment cannot influence the choice") {
    const int candidates[] = {1, 2, 3};
    const auto full = cv_select_wavelet(y, candidates, pipeline, split);
    const auto cut = cv_select_wavelet(std::span(y).first(split.train_len), candidates, pipeline, split);
    CHECK(full.number == cut.number);
    for (std::size_t i = 0; i < full.table.size(); ++i) {
      CHECK(full.table[i].smape_pct == cut.table[i].smape_pct);
      CHECK(full.table[i].alpha == cut.table[i].alpha);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS(cv_select_wavelet(y, std::span<const int>{}, pipeline, split));
    const int bad[] = {11};
    CHECK_THROWS_AS(cv_select_wavelet(y, bad, pipeline, split), UnsupportedWavelet);
  }
}

TEST_CASE("fit_window leaves training artefacts untouched by later data") {
  const auto y = noisy_heavisine(5);
  auto perturbed = y;
  for (std::size_t i = 300; i < perturbed.size(); ++i) perturbed[i] = -perturbed[i] * 10.0;
  for (FeatureSetKind kind : {FeatureSetKind::Lags, FeatureSetKind::Ndwt, FeatureSetKind::Nwpt}) {
    const auto pipeline = small_pipeline(kind);
    const auto builder = default_feature_builder(pipeline);
    const double alpha[] = {0.25};
    const auto a = fit_window(y, 3, pipeline, builder, 300, 100, 1, alpha);
    const auto b = fit_window(perturbed, 3, pipeline, builder, 300, 100, 1, alpha);
    CHECK(a.models[0].coefficients == b.models[0].coefficients);
    CHECK(a.models[0].intercept == b.models[0].intercept);
    CHECK(a.scalers[0].mean == b.scalers[0].mean);
    CHECK(a.scalers[0].sd == b.scalers[0].sd);
    CHECK(a.kept_names == b.kept_names);
    CHECK(a.target_times == b.target_times);
    CHECK(a.target_times.front() == 301);
    CHECK(a.target_times.back() == 400);
  }
}

TEST_CASE("constant series forecasts exactly") {
  ExperimentSpec spec;
  spec.series.push_back({"flat", std::vector<double>(400, 5.0)});
  spec.candidates = {1, 2};
  spec.pipeline = small_pipeline(FeatureSetKind::Lags);
  spec.split = small_split();
  const auto report = run_experiment(spec);
  for (const auto& row : report.rows) CHECK(std::abs(row.summary.mean_smape_pct) < 1e-8);
}

TEST_CASE("experiment report shape and statistics") {
  auto spec = small_experiment(3);
  const auto report = run_experiment(spec);
  REQUIRE(report.rows.size() == 6);
  REQUIRE(report.cells.size() == 18);
  CHECK(report.rows[0].model == ModelKind::Ridge);
  CHECK(report.rows[0].feature_set == FeatureSetKind::Lags);
  CHECK(report.rows[0].modal_number == 0);
  CHECK(report.rows[1].modal_number >= 1);
  CHECK(report.rows[5].model == ModelKind::Persistence);

  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    std::vector<double> scores;
    for (const auto& cell : report.cells) {
      if (cell.model == report.rows[r].model && cell.feature_set == report.rows[r].feature_set) {
        scores.push_back(cell.smape_pct);
      }
    }
    REQUIRE(scores.size() == 3);
    const double mean = (scores[0] + scores[1] + scores[2]) / 3.0;
    double ss = 0.0;
    for (double s : scores) ss += (s - mean) * (s - mean);
    CHECK(report.rows[r].summary.mean_smape_pct == doctest::Approx(mean).epsilon(1e-12));
    CHECK(report.rows[r].summary.se_pct == doctest::Approx(std::sqrt(ss / 2.0) / std::sqrt(3.0)).epsilon(1e-12));
  }

  std::ostringstream csv;
  write_report_csv(csv, report);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "Model,Feature Set,Modal Wavelet Number,Mean SMAPE %,SE,n");
  std::ostringstream table;
  write_report_table(table, report);
  CHECK(table.str().find("Mean SMAPE % (SE)") != std::string::npos);
  CHECK(table.str().find("Modal Wavelet Number") != std::string::npos);
}

TEST_CASE("report does not depend on the number of jobs") {
  auto spec = small_experiment(2);
  auto render = [&](int jobs) {
    spec.jobs = jobs;
    const auto report = run_experiment(spec);
    std::ostringstream out;
    write_report_csv(out, report);
    write_predictions_csv(out, spec, report);
    write_cv_csv(out, spec, report);
    write_selection_csv(out, spec, report);
    return out.str();
  };
  const std::string serial = render(1);
  CHECK(render(4) == serial);
  CHECK(render(3) == serial);
}

TEST_CASE("perturbing the test segment leaves training choices alone") {
  auto spec = small_experiment(1);
  auto perturbed = spec;
  for (std::size_t i = 300; i < 400; ++i) perturbed.series[0].values[i] += 50.0;
  const auto a = run_experiment(spec);
  const auto b = run_experiment(perturbed);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].wavelet_number == b.cells[i].wavelet_number);
    CHECK(a.cells[i].selected == b.cells[i].selected);
    if (a.cells[i].model == ModelKind::Ridge) CHECK(a.cells[i].alpha == b.cells[i].alpha);
    CHECK(a.cells[i].cv_table.size() == b.cells[i].cv_table.size());
    for (std::size_t c = 0; c < a.cells[i].cv_table.size(); ++c) {
      CHECK(a.cells[i].cv_table[c].smape_pct == b.cells[i].cv_table[c].smape_pct);
    }
  }
}

TEST_CASE("direct multi-horizon") {
  auto spec = small_experiment(1);
  spec.split.horizons = 5;
  spec.feature_sets = {FeatureSetKind::Lags, FeatureSetKind::Ndwt};
  const auto report = run_experiment(spec);
  for (const auto& cell : report.cells) {
    CHECK(cell.target_times == std::vector<std::size_t>{301, 302, 303, 304, 305});
    if (cell.model == ModelKind::Persistence) {
      for (double p : cell.predictions) CHECK(p == spec.series[0].values[299]);
    }
  }
}

TEST_CASE("experiment validation happens up front") {
  auto spec = small_experiment(1);
  auto bad = spec;
  bad.models = {ModelKind::Ridge, ModelKind::Ridge};
  CHECK_THROWS(run_experiment(bad));
  bad = spec;
  bad.pipeline.selector->k = 1000;
  CHECK_THROWS(run_experiment(bad));
  bad = spec;
  bad.candidates = {0};
  CHECK_THROWS(run_experiment(bad));
  bad = spec;
  bad.series[0].values.resize(350);
  CHECK_THROWS_AS(run_experiment(bad), InsufficientData);
  bad = spec;
  bad.pipeline.alpha_grid = {1.0, -1.0};
  CHECK_THROWS(run_experiment(bad));
  CHECK(parse_model("ridge") == ModelKind::Ridge);
  CHECK_THROWS(parse_model("svr"));
  CHECK(parse_feature_set("nwpt") == FeatureSetKind::Nwpt);
  CHECK(feature_count(small_pipeline(FeatureSetKind::Ndwt), FeatureSetKind::Ndwt) == 15);
  CHECK(feature_count(small_pipeline(FeatureSetKind::Nwpt), FeatureSetKind::Nwpt) == 15);
}
