#pragma once

#include <cstddef>
#include <span>

namespace wavecast {

/// Denominator of each SMAPE term. `Symmetric` uses (|p| + |a|) / 2 and is
/// bounded by 200%. `DifferenceCompat` uses (|p| - |a|) / 2; it is unbounded
/// and sign-indefinite and exists only to reproduce that variant on request.
enum class SmapeForm { Symmetric, DifferenceCompat };

/// Mean over t of |p_t - a_t| / denominator, times 100. Terms whose
/// denominator is exactly zero contribute zero.
double smape(std::span<const double> pred, std::span<const double> actual,
             SmapeForm form = SmapeForm::Symmetric);

struct ScoreSummary {
  double mean_smape_pct = 0.0;
  double se_pct = 0.0;  // sample sd (n-1) / sqrt(n); NaN when n < 2
  std::size_t n = 0;
};

ScoreSummary summarize(std::span<const double> per_series_smape);

}  // namespace wavecast
