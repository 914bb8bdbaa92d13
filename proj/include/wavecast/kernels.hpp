#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavecast/transform.hpp"

namespace wavecast {

/// Whole-series coefficients, one sequence per node in node_index order.
/// sequence[i] holds the value at t = i + 1.
struct CoefficientTable {
  Mode mode = Mode::Ndwt;
  int levels = 0;
  std::vector<double> input;
  std::vector<std::vector<double>> nodes;

  std::size_t length() const noexcept { return input.size(); }
  const std::vector<double>& at(NodeId node) const { return nodes[node_index(mode, node)]; }
  CoefficientFrame frame(std::size_t t) const;

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

/// Level-major evaluation of the streaming recurrences over a complete series.
/// Once a parent sequence is known, every child value is independent, so each
/// level is an OpenMP parallel loop over (parent, t). Output is bit-identical
/// to transform_series_reference for any thread count.
CoefficientTable transform_series(const TransformConfig& config, std::span<const double> series);

/// Serial reference: pushes the series through StreamingTransform one sample
/// at a time.
CoefficientTable transform_series_reference(const TransformConfig& config,
                                            std::span<const double> series);

}  // namespace wavecast
