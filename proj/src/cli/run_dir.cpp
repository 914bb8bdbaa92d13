#include <Eigen/Core>
#include <fstream>

#include "cli_internal.hpp"
#include "wavecast/csv.hpp"

namespace wavecast::cli {

namespace {

std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void write_run_directory(const std::filesystem::path& dir, const ForecastOptions& options,
                         const ExperimentSpec& spec, const ForecastReport& report) {
  std::filesystem::create_directories(dir / "inputs");

  open_file(dir / "config.txt") << canonical_config(options);
  open_file(dir / "versions.txt") << "wavecast " << WAVECAST_VERSION << '\n'
                                  << "eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION
                                  << '.' << EIGEN_MINOR_VERSION << '\n'
                                  << "compiler " << __VERSION__ << '\n';
  for (const auto& series : spec.series) {
    auto out = open_file(dir / "inputs" / (series.name + ".csv"));
    write_series_csv(out, series.values);
  }
  {
    auto out = open_file(dir / "report.csv");
    write_report_csv(out, report);
  }
  {
    auto out = open_file(dir / "report.txt");
    write_report_table(out, report);
  }
  {
    auto out = open_file(dir / "per_series.csv");
    write_per_series_csv(out, spec, report);
  }
  {
    auto out = open_file(dir / "predictions.csv");
    write_predictions_csv(out, spec, report);
  }
  {
    auto out = open_file(dir / "cv.csv");
    write_cv_csv(out, spec, report);
  }
  {
    auto out = open_file(dir / "selection.csv");
    write_selection_csv(out, spec, report);
  }
}

}  // namespace wavecast::cli
