#include "wavecast/transform.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "causal_filter.hpp"
#include "wavecast/error.hpp"

namespace wavecast {

namespace {

// History needed by a node whose children sit at level + 1.
std::size_t history_capacity(std::size_t width, int level) {
  return (width - 1) * (std::size_t{1} << level) + 1;
}

bool has_children(const TransformConfig& config, NodeId node) {
  if (node.level >= config.levels) return false;
  return config.mode == Mode::Nwpt || node.packet == 0;
}

}  // namespace

TransformConfig make_config(Mode mode, int number, int levels, std::size_t buffer_budget) {
  TransformConfig config;
  config.levels = levels;
  config.filter = daubechies_filter(number);
  config.mode = mode;
  config.buffer_budget = buffer_budget;
  validate(config);
  return config;
}

std::size_t packet_count(int levels) { return (std::size_t{1} << (levels + 1)) - 2; }

std::size_t node_count(const TransformConfig& config) {
  const auto levels = static_cast<std::size_t>(config.levels);
  return config.mode == Mode::Ndwt ? 2 * levels : packet_count(config.levels);
}

std::size_t buffer_footprint(const TransformConfig& config) {
  // Accumulated in floating point so absurd NWPT depths saturate instead of wrapping.
  const auto width = static_cast<long double>(config.filter.width());
  long double total = width;  // input history
  for (int level = 1; level <= config.levels; ++level) {
    const long double per_node =
        level < config.levels ? (width - 1) * std::ldexp(1.0L, level) + 1 : 1.0L;
    if (config.mode == Mode::Ndwt) {
      total += per_node + 1;  // smooth keeps history, detail does not
    } else {
      total += std::ldexp(1.0L, level) * per_node;
    }
  }
  constexpr auto kMax = static_cast<long double>(std::numeric_limits<std::size_t>::max());
  return total >= kMax ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(total);
}

void validate(const TransformConfig& config) {
  if (config.levels < 1) {
    throw std::invalid_argument("levels must be >= 1, got " + std::to_string(config.levels));
  }
  // Keep 2^{L+1} and the tap spacing well inside size_t.
  if (config.levels > 30) {
    throw std::invalid_argument("levels must be <= 30, got " + std::to_string(config.levels));
  }
  const std::size_t width = config.filter.width();
  if (width < 2 || width % 2 != 0 || config.filter.g.size() != width) {
    throw std::invalid_argument("filter pair must have matching even tap counts");
  }
  const std::size_t required = buffer_footprint(config);
  if (required > config.buffer_budget) throw BudgetExceeded(required, config.buffer_budget);
}

std::size_t burn_in(const TransformConfig& config) {
  return (config.filter.width() - 1) * ((std::size_t{1} << config.levels) - 1);
}

std::size_t node_index(Mode mode, NodeId node) {
  const auto level = static_cast<std::size_t>(node.level);
  const auto packet = static_cast<std::size_t>(node.packet);
  if (mode == Mode::Ndwt) return 2 * (level - 1) + packet;
  return (std::size_t{1} << level) - 2 + packet;
}

NodeId node_at(Mode mode, std::size_t index) {
  if (mode == Mode::Ndwt) {
    return {static_cast<int>(index / 2) + 1, static_cast<int>(index % 2)};
  }
  // Level l occupies [2^l - 2, 2^{l+1} - 2).
  const int level = std::bit_width(index + 2) - 1;
  return {level, static_cast<int>(index + 2 - (std::size_t{1} << level))};
}

RingBuffer::RingBuffer(std::size_t capacity) : data_(capacity == 0 ? 1 : capacity) {}

void RingBuffer::push(double value) noexcept {
  head_ = (head_ + 1) % data_.size();
  data_[head_] = value;
  if (size_ < data_.size()) ++size_;
}

double RingBuffer::back(std::size_t lag) const noexcept {
  return data_[(head_ + data_.size() - lag) % data_.size()];
}

StreamingTransform::StreamingTransform(TransformConfig config)
    : config_(std::move(config)), input_(config_.filter.width()) {
  validate(config_);
  const std::size_t width = config_.filter.width();
  const std::size_t count = node_count(config_);
  nodes_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const NodeId node = node_at(config_.mode, i);
    nodes_.emplace_back(has_children(config_, node) ? history_capacity(width, node.level) : 1);
  }
}

double StreamingTransform::read(const Node& node, std::size_t lag) const noexcept {
  // Index t - lag <= 0 falls before the series: constant-end extension.
  return lag >= t_ ? node.first : node.history.back(lag);
}

void StreamingTransform::emit(Node& node, double value) const noexcept {
  if (t_ == 1) node.first = value;
  node.history.push(value);
}

CoefficientFrame StreamingTransform::push(double value) {
  if (!std::isfinite(value)) {
    throw NonFiniteInput("non-finite sample at t=" + std::to_string(t_ + 1));
  }
  ++t_;
  emit(input_, value);

  CoefficientFrame frame;
  frame.t = t_;
  frame.mode = config_.mode;
  frame.levels = config_.levels;
  frame.values.resize(nodes_.size());

  const auto& h = config_.filter.h;
  const auto& g = config_.filter.g;
  const bool packets = config_.mode == Mode::Nwpt;
  const double scale = packets ? detail::kSqrt2 : 1.0;

  for (int level = 1; level <= config_.levels; ++level) {
    const std::size_t spacing = std::size_t{1} << (level - 1);
    const int parents = packets ? (1 << (level - 1)) : 1;
    for (int l = 0; l < parents; ++l) {
      const Node& parent =
          level == 1 ? input_ : nodes_[node_index(config_.mode, {level - 1, packets ? l : 0})];
      auto at = [&](std::size_t lag) { return read(parent, lag); };
      const double low = scale * detail::causal_tap(h, spacing, at);
      const double high = scale * detail::causal_tap(g, spacing, at);
      const std::size_t low_index = node_index(config_.mode, {level, packets ? 2 * l : 0});
      const std::size_t high_index = low_index + 1;
      emit(nodes_[low_index], low);
      emit(nodes_[high_index], high);
      frame.values[low_index] = low;
      frame.values[high_index] = high;
    }
  }
  return frame;
}

CoefficientFrame ndwt_push(StreamingTransform& state, double value) {
  if (state.config().mode != Mode::Ndwt) throw std::logic_error("ndwt_push on an NWPT state");
  return state.push(value);
}

CoefficientFrame nwpt_push(StreamingTransform& state, double value) {
  if (state.config().mode != Mode::Nwpt) throw std::logic_error("nwpt_push on an NDWT state");
  return state.push(value);
}

DwtPyramid batch_dwt(std::span<const double> series, const FilterPair& filter, int levels) {
  const std::size_t length = series.size();
  if (length == 0 || !std::has_single_bit(length)) {
    throw std::invalid_argument("batch_dwt needs a dyadic length, got " + std::to_string(length));
  }
  const int max_levels = std::bit_width(length) - 1;
  if (levels < 1 || levels > max_levels) {
    throw std::invalid_argument("batch_dwt levels must be in 1.." + std::to_string(max_levels));
  }
  for (double v : series) {
    if (!std::isfinite(v)) throw NonFiniteInput("non-finite sample in batch_dwt input");
  }

  DwtPyramid pyramid;
  std::vector<double> current(series.begin(), series.end());
  for (int level = 1; level <= levels; ++level) {
    const std::size_t half = current.size() / 2;
    std::vector<double> smooth(half);
    std::vector<double> detail(half);
    for (std::size_t k = 1; k <= half; ++k) {
      // 1-based parent index 2k - lag; anything <= 0 reads the first element.
      auto at = [&](std::size_t lag) { return lag >= 2 * k ? current[0] : current[2 * k - lag - 1]; };
      smooth[k - 1] = detail::causal_tap(filter.h, 1, at);
      detail[k - 1] = detail::causal_tap(filter.g, 1, at);
    }
    pyramid.smooth.push_back(smooth);
    pyramid.detail.push_back(std::move(detail));
    current = std::move(smooth);
  }
  return pyramid;
}

}  // namespace wavecast
