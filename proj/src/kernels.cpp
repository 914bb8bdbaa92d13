#include "wavecast/kernels.hpp"

#include <cmath>
#include <string>

#include "causal_filter.hpp"
#include "wavecast/error.hpp"

namespace wavecast {

CoefficientFrame CoefficientTable::frame(std::size_t t) const {
  CoefficientFrame out;
  out.t = t;
  out.mode = mode;
  out.levels = levels;
  out.values.reserve(nodes.size());
  for (const auto& sequence : nodes) out.values.push_back(sequence[t - 1]);
  return out;
}

CoefficientTable transform_series(const TransformConfig& config, std::span<const double> series) {
  validate(config);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!std::isfinite(series[i])) {
      throw NonFiniteInput("non-finite sample at t=" + std::to_string(i + 1));
    }
  }

  CoefficientTable table;
  table.mode = config.mode;
  table.levels = config.levels;
  table.input.assign(series.begin(), series.end());
  table.nodes.assign(node_count(config), std::vector<double>(series.size()));

  const auto length = static_cast<std::ptrdiff_t>(series.size());
  if (length == 0) return table;

  const bool packets = config.mode == Mode::Nwpt;
  const double scale = packets ? detail::kSqrt2 : 1.0;
  const std::span<const double> h = config.filter.h;
  const std::span<const double> g = config.filter.g;

  for (int level = 1; level <= config.levels; ++level) {
    const std::size_t spacing = std::size_t{1} << (level - 1);
    const std::ptrdiff_t parents = packets ? (std::ptrdiff_t{1} << (level - 1)) : 1;

#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t l = 0; l < parents; ++l) {
      for (std::ptrdiff_t i = 0; i < length; ++i) {
        const int parent_packet = packets ? static_cast<int>(l) : 0;
        const std::vector<double>& parent =
            level == 1 ? table.input : table.at({level - 1, parent_packet});
        const auto index = static_cast<std::size_t>(i);
        // t = i + 1; a lag reaching t or beyond lands on the extension.
        auto at = [&](std::size_t lag) { return lag > index ? parent[0] : parent[index - lag]; };
        const std::size_t low = node_index(config.mode, {level, packets ? 2 * parent_packet : 0});
        table.nodes[low][index] = scale * detail::causal_tap(h, spacing, at);
        table.nodes[low + 1][index] = scale * detail::causal_tap(g, spacing, at);
      }
    }
  }
  return table;
}

CoefficientTable transform_series_reference(const TransformConfig& config,
                                            std::span<const double> series) {
  StreamingTransform state(config);
  CoefficientTable table;
  table.mode = config.mode;
  table.levels = config.levels;
  table.input.assign(series.begin(), series.end());
  table.nodes.assign(node_count(config), std::vector<double>(series.size()));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const CoefficientFrame frame = state.push(series[i]);
    for (std::size_t n = 0; n < frame.values.size(); ++n) table.nodes[n][i] = frame.values[n];
  }
  return table;
}

}  // namespace wavecast
