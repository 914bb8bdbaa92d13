#include <fstream>
#include <set>
#include <sstream>

#include "cli_internal.hpp"
#include "wavecast/csv.hpp"
#include "wavecast/signals.hpp"

namespace wavecast::cli {

namespace {

template <class T, class Format>
std::string join(const std::vector<T>& values, Format format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format(values[i]);
  }
  return out;
}

std::string identity(const std::string& s) { return s; }
std::string integer(int v) { return std::to_string(v); }

}  // namespace

std::string canonical_config(const ForecastOptions& o) {
  std::ostringstream out;
  out << "# wavecast forecast configuration\n";
  if (!o.inputs.empty()) out << "input=" << join(o.inputs, identity) << '\n';
  out << "kind=" << o.kind << '\n'
      << "length=" << o.length << '\n'
      << "noise-sd=" << format_number(o.noise_sd) << '\n'
      << "seed=" << o.seed << '\n'
      << "replicates=" << o.replicates << '\n'
      << "models=" << join(o.models, identity) << '\n'
      << "feature-sets=" << join(o.feature_sets, identity) << '\n'
      << "candidates=" << join(o.candidates, integer) << '\n'
      << "levels=" << o.levels << '\n'
      << "max-lag=" << o.max_lag << '\n'
      << "ndwt-lags=" << o.ndwt_lags << '\n'
      << "nwpt-lags=" << o.nwpt_lags << '\n'
      << "selector=" << o.selector << '\n'
      << "k=" << o.k << '\n'
      << "selector-alpha=" << format_number(o.selector_alpha) << '\n'
      << "alphas=" << join(o.alphas, format_number) << '\n'
      << "train-len=" << o.train_len << '\n'
      << "valid-tail=" << o.valid_tail << '\n'
      << "test-len=" << o.test_len << '\n'
      << "horizons=" << o.horizons << '\n'
      << "budget=" << o.budget << '\n';
  return out.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
  return out;
}

ExperimentSpec build_experiment(const ForecastOptions& o, int jobs) {
  ExperimentSpec spec;
  try {
    spec.models.clear();
    for (const auto& name : o.models) spec.models.push_back(parse_model(name));
    spec.feature_sets.clear();
    for (const auto& name : o.feature_sets) spec.feature_sets.push_back(parse_feature_set(name));
    spec.candidates = o.candidates;

    PipelineConfig& p = spec.pipeline;
    p.levels = o.levels;
    p.max_lag = o.max_lag;
    p.ndwt_lags = o.ndwt_lags;
    p.nwpt_lags = o.nwpt_lags;
    if (o.selector == "none") {
      p.selector.reset();
    } else if (o.selector == "ridge" || o.selector == "pca") {
      p.selector = SelectorSpec{o.selector == "ridge" ? SelectorMethod::RidgeTopK
                                                      : SelectorMethod::PcaTopK,
                                o.k, o.selector_alpha};
    } else {
      throw UsageError("unknown selector '" + o.selector + "' (supported: none, ridge, pca)");
    }
    p.alpha_grid = o.alphas;
    p.buffer_budget = o.budget;

    spec.split = {o.train_len, o.valid_tail, o.test_len, o.horizons};
    spec.jobs = jobs;
    if (o.inputs.empty()) {
      if (o.replicates < 1) throw UsageError("replicates must be >= 1");
      const SignalKind kind = parse_signal_kind(o.kind);
      for (int r = 0; r < o.replicates; ++r) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(r);
        spec.series.push_back({o.kind + "-s" + std::to_string(seed),
                               generate({kind, o.length, o.noise_sd, seed})});
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  std::set<std::string> names;
  for (const auto& path : o.inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input '" + path + "'");
    const std::string stem = std::filesystem::path(path).stem().string();
    std::string name = stem;
    for (int copy = 2; !names.insert(name).second; ++copy) name = stem + "-" + std::to_string(copy);
    spec.series.push_back({name, read_series_csv(in)});
  }

  try {
    validate(spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return spec;
}

}  // namespace wavecast::cli
