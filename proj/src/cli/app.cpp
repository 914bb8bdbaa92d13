#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include "cli_internal.hpp"
#include "wavecast/cli.hpp"
#include "wavecast/csv.hpp"
#include "wavecast/error.hpp"
#include "wavecast/featureset.hpp"
#include "wavecast/kernels.hpp"
#include "wavecast/signals.hpp"

namespace wavecast::cli {

namespace {

// Routes "-" to the caller's stream and anything else to a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::vector<double> load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input '" + path + "'");
  return read_series_csv(in);
}

Mode parse_mode(const std::string& name) {
  if (name == "ndwt") return Mode::Ndwt;
  if (name == "nwpt") return Mode::Nwpt;
  throw UsageError("unknown mode '" + name + "' (supported: ndwt, nwpt)");
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

struct SimulateOptions {
  std::string kind;
  std::size_t length = 2048;
  double noise_sd = 0.0;
  std::uint64_t seed = 1;
  std::string output = "-";
};

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const SignalSpec spec = as_usage([&] {
    return SignalSpec{parse_signal_kind(o.kind), o.length, o.noise_sd, o.seed};
  });
  const std::vector<double> values = as_usage([&] { return generate(spec); });
  Sink sink(o.output, out);
  write_series_csv(sink.get(), values);
}

struct TransformOptions {
  std::string input;
  std::string mode = "ndwt";
  int number = 1;
  int levels = 3;
  std::size_t budget = kDefaultBufferBudget;
  std::string output = "-";
};

void cmd_transform(const TransformOptions& o, std::ostream& out) {
  const TransformConfig config = as_usage([&] {
    return make_config(parse_mode(o.mode), o.number, o.levels, o.budget);
  });
  const std::vector<double> series = load_series(o.input);
  StreamingTransform state(config);
  Sink sink(o.output, out);
  write_coefficients_header(sink.get());
  for (double value : series) write_coefficient_frame(sink.get(), state.push(value));
}

struct FeaturesOptions {
  std::string input;
  std::string set = "ndwt";
  int number = 1;
  int levels = 3;
  int lags = 4;
  int horizon = 1;
  std::size_t fit_rows = 0;  // 0: all rows
  std::string selector = "none";
  int k = 1;
  double selector_alpha = 1.0;
  std::size_t budget = kDefaultBufferBudget;
  std::string output = "-";
  std::string sidecar;
};

nlohmann::json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

void cmd_features(const FeaturesOptions& o, std::ostream& out) {
  const FeatureSetKind kind = as_usage([&] { return parse_feature_set(o.set); });
  if (o.selector != "none" && o.selector != "ridge" && o.selector != "pca") {
    throw UsageError("unknown selector '" + o.selector + "' (supported: none, ridge, pca)");
  }
  std::optional<TransformConfig> config;
  if (kind != FeatureSetKind::Lags) {
    config = as_usage([&] {
      return make_config(kind == FeatureSetKind::Nwpt ? Mode::Nwpt : Mode::Ndwt, o.number,
                         o.levels, o.budget);
    });
  }
  const std::vector<double> series = load_series(o.input);
  FeatureMatrix design = config ? coefficient_features(series, *config, o.lags, o.horizon)
                                : lag_matrix(series, o.lags, o.horizon);

  const auto total = static_cast<std::size_t>(design.rows());
  const std::size_t fit = o.fit_rows == 0 ? total : std::min(o.fit_rows, total);
  std::vector<Eigen::Index> fit_rows(fit);
  for (std::size_t r = 0; r < fit; ++r) fit_rows[r] = static_cast<Eigen::Index>(r);

  nlohmann::json sidecar;
  sidecar["fit_rows"] = fit;
  sidecar["horizon"] = o.horizon;
  sidecar["columns"] = design.names;
  const ZScore scaler = ZScore::fit(select_rows(design, fit_rows).values);
  design.values = scaler.apply(design.values);
  sidecar["zscore"] = {{"mean", to_json(scaler.mean)}, {"sd", to_json(scaler.sd)}};

  if (o.selector == "ridge") {
    const Selection selection =
        as_usage([&] {
          return ridge_topk_select(select_rows(design, fit_rows),
                                   {SelectorMethod::RidgeTopK, o.k, o.selector_alpha});
        });
    std::vector<std::string> ranked;
    for (Eigen::Index c : selection.ranking) ranked.push_back(design.names[static_cast<std::size_t>(c)]);
    sidecar["selection"] = {{"method", "ridge_topk"}, {"k", o.k}, {"alpha", o.selector_alpha},
                            {"ranking", ranked}, {"scores", selection.scores}};
    design = select_columns(design, selection.kept());
  } else if (o.selector == "pca") {
    const PcaModel pca = as_usage([&] { return pca_topk(select_rows(design, fit_rows).values, o.k); });
    nlohmann::json loadings = nlohmann::json::array();
    for (Eigen::Index c = 0; c < pca.loadings.cols(); ++c) loadings.push_back(to_json(pca.loadings.col(c)));
    sidecar["pca"] = {{"k", o.k}, {"center", to_json(pca.center)},
                      {"eigenvalues", to_json(pca.eigenvalues)}, {"loadings", loadings},
                      {"explained_ratio", to_json(pca.explained_ratio())}};
    design = project(design, pca);
  }

  Sink sink(o.output, out);
  write_feature_csv(sink.get(), design);
  std::string sidecar_path = o.sidecar;
  if (sidecar_path.empty() && o.output != "-") sidecar_path = o.output + ".json";
  if (!sidecar_path.empty()) {
    std::ofstream json(sidecar_path, std::ios::binary);
    if (!json) throw std::runtime_error("cannot write '" + sidecar_path + "'");
    json << sidecar.dump(2) << '\n';
  }
}

void cmd_forecast(const ForecastOptions& o, int jobs, const std::string& out_root, std::ostream& out) {
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  const ExperimentSpec spec = build_experiment(o, jobs);
  const ForecastReport report = run_experiment(spec);
  const std::string config = canonical_config(o);
  const std::filesystem::path dir = std::filesystem::path(out_root) / ("run-" + hex64(fnv1a64(config)));
  write_run_directory(dir, o, spec, report);
  write_report_table(out, report);
  out << "run directory: " << dir.string() << '\n';
}

void cmd_filters(int number, std::ostream& out) {
  const FilterPair pair = as_usage([&] { return daubechies_filter(number); });
  out << "n,h,g\n";
  for (std::size_t n = 0; n < pair.width(); ++n) {
    out << n << ',' << format_number(pair.h[n]) << ',' << format_number(pair.g[n]) << '\n';
  }
}

// CLI11 only reads config files attached to the top-level app, so the
// subcommand applies the parsed items itself. Options given on the command
// line keep their values.
void apply_config_file(CLI::App& command, const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw CLI::FileError::Missing(path);
  const std::vector<CLI::ConfigItem> items = CLI::ConfigINI().from_file(path);
  for (const auto& item : items) {
    if (!item.parents.empty() || item.name == "--") continue;
    CLI::Option* option = command.get_option_no_throw("--" + item.name);
    if (option == nullptr || item.name == "config") {
      throw CLI::ConfigError::Extras(item.name);
    }
    if (option->count() > 0) continue;
    for (const auto& value : item.inputs) option->add_result(value);
    option->run_callback();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal non-decimated wavelet features and forecasting baselines", "wavecast"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("wavecast ") + WAVECAST_VERSION);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Write a simulated test signal as t,value CSV");
  simulate->add_option("--kind", sim.kind, "bumps | doppler | heavisine")->required();
  simulate->add_option("--length", sim.length, "Number of samples (>= 2)");
  simulate->add_option("--noise-sd", sim.noise_sd, "Gaussian noise standard deviation");
  simulate->add_option("--seed", sim.seed, "Noise seed");
  simulate->add_option("-o,--output", sim.output, "Output path, '-' for stdout");

  TransformOptions tr;
  auto* transform = app.add_subcommand("transform", "Stream a series through the causal NDWT/NWPT");
  transform->add_option("-i,--input", tr.input, "t,value CSV")->required();
  transform->add_option("--mode", tr.mode, "ndwt | nwpt");
  transform->add_option("--number", tr.number, "Daubechies wavelet number (1..10)");
  transform->add_option("--levels", tr.levels, "Decomposition levels");
  transform->add_option("--budget", tr.budget, "Maximum buffered coefficients");
  transform->add_option("-o,--output", tr.output, "Output path, '-' for stdout");

  FeaturesOptions fe;
  auto* features = app.add_subcommand("features", "Build a causal feature matrix");
  features->add_option("-i,--input", fe.input, "t,value CSV")->required();
  features->add_option("--set", fe.set, "lags | ndwt | nwpt");
  features->add_option("--number", fe.number, "Daubechies wavelet number (1..10)");
  features->add_option("--levels", fe.levels, "Decomposition levels");
  features->add_option("--lags", fe.lags, "Lags per sequence (max lag for the lags set)");
  features->add_option("--horizon", fe.horizon, "Target offset");
  features->add_option("--fit-rows", fe.fit_rows, "Leading rows used to fit normalisation/selection (0 = all)");
  features->add_option("--selector", fe.selector, "none | ridge | pca");
  features->add_option("--k", fe.k, "Columns or components kept by the selector");
  features->add_option("--selector-alpha", fe.selector_alpha, "Ridge alpha for selection");
  features->add_option("--budget", fe.budget, "Maximum buffered coefficients");
  features->add_option("-o,--output", fe.output, "Output CSV, '-' for stdout");
  features->add_option("--sidecar", fe.sidecar, "JSON sidecar path (default <output>.json)");

  ForecastOptions fc;
  int jobs = 1;
  std::string out_root = "runs";
  auto* forecast = app.add_subcommand("forecast", "Run the forecasting experiment and write a report");
  std::string config_path;
  forecast->add_option("--config", config_path, "key=value configuration file ('#' comments); flags override it");
  forecast->add_option("--input", fc.inputs, "t,value CSV inputs (comma separated); overrides simulation")
      ->delimiter(',');
  forecast->add_option("--kind", fc.kind, "Simulated signal kind");
  forecast->add_option("--length", fc.length, "Simulated length");
  forecast->add_option("--noise-sd", fc.noise_sd, "Simulated noise sd");
  forecast->add_option("--seed", fc.seed, "First simulation seed");
  forecast->add_option("--replicates", fc.replicates, "Simulated series (seeds seed, seed+1, ...)");
  forecast->add_option("--models", fc.models, "ridge,persistence")->delimiter(',');
  forecast->add_option("--feature-sets", fc.feature_sets, "lags,ndwt,nwpt")->delimiter(',');
  forecast->add_option("--candidates", fc.candidates, "Wavelet numbers for cross-validation")->delimiter(',');
  forecast->add_option("--levels", fc.levels, "Decomposition levels");
  forecast->add_option("--max-lag", fc.max_lag, "Lags in the lags feature set");
  forecast->add_option("--ndwt-lags", fc.ndwt_lags, "Lags per NDWT sequence");
  forecast->add_option("--nwpt-lags", fc.nwpt_lags, "Lags per NWPT packet");
  forecast->add_option("--selector", fc.selector, "none | ridge | pca");
  forecast->add_option("--k", fc.k, "Features kept by the selector");
  forecast->add_option("--selector-alpha", fc.selector_alpha, "Ridge alpha used for selection");
  forecast->add_option("--alphas", fc.alphas, "Ridge alpha grid")->delimiter(',');
  forecast->add_option("--train-len", fc.train_len, "Training segment length");
  forecast->add_option("--valid-tail", fc.valid_tail, "Validation tail inside the training segment");
  forecast->add_option("--test-len", fc.test_len, "Test segment length");
  forecast->add_option("--horizons", fc.horizons, "1 = one-step; H > 1 = direct 1..H from the end of training");
  forecast->add_option("--budget", fc.budget, "Maximum buffered coefficients");
  forecast->add_option("--jobs", jobs, "Worker threads (output does not depend on this)");
  forecast->add_option("--out-dir", out_root, "Root for run directories")->envname("WAVECAST_OUTPUT_ROOT");

  int filter_number = 1;
  auto* filters = app.add_subcommand("filters", "Print Daubechies filter taps as n,h,g CSV");
  filters->add_option("--number", filter_number, "Daubechies wavelet number (1..10)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!config_path.empty()) apply_config_file(*forecast, config_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) cmd_simulate(sim, out);
    if (transform->parsed()) cmd_transform(tr, out);
    if (features->parsed()) cmd_features(fe, out);
    if (forecast->parsed()) cmd_forecast(fc, jobs, out_root, out);
    if (filters->parsed()) cmd_filters(filter_number, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wavecast::cli
