#include "wavecast/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wavecast/error.hpp"

namespace wavecast {

double smape(std::span<const double> pred, std::span<const double> actual, SmapeForm form) {
  if (pred.size() != actual.size()) {
    throw std::invalid_argument("smape length mismatch: " + std::to_string(pred.size()) + " vs " +
                                std::to_string(actual.size()));
  }
  if (pred.empty()) throw std::invalid_argument("smape needs at least one value");

  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!std::isfinite(pred[i]) || !std::isfinite(actual[i])) {
      throw NonFiniteInput("non-finite value at position " + std::to_string(i));
    }
    const double denominator = form == SmapeForm::Symmetric
                                   ? (std::abs(pred[i]) + std::abs(actual[i])) / 2.0
                                   : (std::abs(pred[i]) - std::abs(actual[i])) / 2.0;
    if (denominator == 0.0) continue;
    total += std::abs(pred[i] - actual[i]) / denominator;
  }
  return 100.0 * total / static_cast<double>(pred.size());
}

ScoreSummary summarize(std::span<const double> per_series_smape) {
  ScoreSummary summary;
  summary.n = per_series_smape.size();
  if (summary.n == 0) {
    summary.mean_smape_pct = std::numeric_limits<double>::quiet_NaN();
    summary.se_pct = summary.mean_smape_pct;
    return summary;
  }
  double sum = 0.0;
  for (double v : per_series_smape) sum += v;
  const auto n = static_cast<double>(summary.n);
  summary.mean_smape_pct = sum / n;
  if (summary.n < 2) {
    summary.se_pct = std::numeric_limits<double>::quiet_NaN();
    return summary;
  }
  double squares = 0.0;
  for (double v : per_series_smape) squares += (v - summary.mean_smape_pct) * (v - summary.mean_smape_pct);
  summary.se_pct = std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
  return summary;
}

}  // namespace wavecast
