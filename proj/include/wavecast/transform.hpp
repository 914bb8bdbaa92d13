#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavecast/filterbank.hpp"

namespace wavecast {

enum class Mode { Ndwt, Nwpt };

/// Default cap on the number of coefficients held in history buffers.
inline constexpr std::size_t kDefaultBufferBudget = std::size_t{1} << 26;

struct TransformConfig {
  int levels = 1;  // level 1 is the finest
  FilterPair filter;
  Mode mode = Mode::Ndwt;
  std::size_t buffer_budget = kDefaultBufferBudget;
};

TransformConfig make_config(Mode mode, int number, int levels,
                            std::size_t buffer_budget = kDefaultBufferBudget);

/// Throws std::invalid_argument for levels < 1 or a malformed filter and
/// BudgetExceeded when buffer_footprint() exceeds the budget.
void validate(const TransformConfig& config);

/// Coefficients held across all history buffers, input included.
std::size_t buffer_footprint(const TransformConfig& config);

/// Number of leading time steps whose coarsest coefficients can still see
/// the constant-end extension: (W-1)(2^L - 1).
std::size_t burn_in(const TransformConfig& config);

/// 2^{L+1} - 2.
std::size_t packet_count(int levels);

/// Coefficient sequences produced per push (2L for NDWT, 2^{L+1}-2 for NWPT).
std::size_t node_count(const TransformConfig& config);

/// A coefficient node. For NDWT, packet 0 is the smooth (h) and packet 1 the
/// detail (g) at that level. For NWPT, packet 2l is the h-child and 2l+1 the
/// g-child of packet l one level up.
struct NodeId {
  int level = 1;
  int packet = 0;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

std::size_t node_index(Mode mode, NodeId node);
NodeId node_at(Mode mode, std::size_t index);

/// Every coefficient emitted at one time index, in node_index order.
struct CoefficientFrame {
  std::size_t t = 0;
  Mode mode = Mode::Ndwt;
  int levels = 0;
  std::vector<double> values;

  double at(NodeId node) const { return values[node_index(mode, node)]; }
  double smooth(int level) const { return at({level, 0}); }
  double detail(int level) const { return at({level, 1}); }
  double packet(int level, int index) const { return at({level, index}); }

  friend bool operator==(const CoefficientFrame&, const CoefficientFrame&) = default;
};

/// Fixed-capacity history; back(0) is the newest element.
class RingBuffer {
 public:
  explicit RingBuffer(std::size_t capacity);

  void push(double value) noexcept;
  double back(std::size_t lag) const noexcept;
  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return data_.size(); }

 private:
  std::vector<double> data_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

/// One-pass causal NDWT/NWPT state. The value at level l and time t is
///
///   sum_{n=0}^{W-1} f_n x_{t - 2^{l-1} (W-1-n)}
///
/// over the parent sequence x (the input at level 1), scaled by sqrt(2) in
/// NWPT mode. Parent indices <= 0 read the parent's first coefficient.
/// Levels are visited finest to coarsest, so every read is already defined.
class StreamingTransform {
 public:
  explicit StreamingTransform(TransformConfig config);

  /// Rejects non-finite values with NonFiniteInput, leaving the state untouched.
  CoefficientFrame push(double value);

  std::size_t time() const noexcept { return t_; }
  const TransformConfig& config() const noexcept { return config_; }

 private:
  struct Node {
    explicit Node(std::size_t capacity) : history(capacity) {}
    RingBuffer history;
    double first = 0.0;
  };

  double read(const Node& node, std::size_t lag) const noexcept;
  void emit(Node& node, double value) const noexcept;

  TransformConfig config_;
  std::size_t t_ = 0;
  Node input_;
  std::vector<Node> nodes_;
};

/// Mode-checked entry points; throw std::logic_error on a mode mismatch.
CoefficientFrame ndwt_push(StreamingTransform& state, double value);
CoefficientFrame nwpt_push(StreamingTransform& state, double value);

/// Decimated pyramid. detail[l-1] and smooth[l-1] hold level l, of length
/// T / 2^l. Uses the same causal window and filters as the streaming
/// transform, so smooth[l-1][k-1] equals the streaming level-l smooth at
/// t = 2^l k whenever neither side touches the boundary extension.
struct DwtPyramid {
  std::vector<std::vector<double>> detail;
  std::vector<std::vector<double>> smooth;
};

/// Throws std::invalid_argument for non-dyadic length or levels outside 1..J.
DwtPyramid batch_dwt(std::span<const double> series, const FilterPair& filter, int levels);

}  // namespace wavecast
