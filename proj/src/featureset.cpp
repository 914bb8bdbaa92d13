#include "wavecast/featureset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wavecast/error.hpp"
#include "wavecast/kernels.hpp"
#include "wavecast/ridge.hpp"

namespace wavecast {

FeatureMatrix lagged_design(std::span<const NamedSequence> sequences,
                            std::span<const double> series, int lags, int horizon) {
  if (lags < 1) throw std::invalid_argument("lags must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t length = series.size();
  const auto lag_count = static_cast<std::size_t>(lags);
  const auto ahead = static_cast<std::size_t>(horizon);
  if (length < lag_count + ahead) {
    throw InsufficientData("series of length " + std::to_string(length) + " is too short for " +
                               std::to_string(lags) + " lags at horizon " +
                               std::to_string(horizon),
                           lag_count + ahead);
  }
  for (const auto& sequence : sequences) {
    if (sequence.values.size() != length) {
      throw std::invalid_argument("sequence '" + sequence.name + "' length differs from series");
    }
  }

  FeatureMatrix out;
  out.horizon = horizon;
  const std::size_t rows = length - ahead - lag_count + 1;
  const auto row_count = static_cast<Eigen::Index>(rows);
  out.times.resize(rows);
  out.target.resize(row_count);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = lag_count + r;
    out.times[r] = t;
    out.target(static_cast<Eigen::Index>(r)) = series[t - 1 + ahead];
  }

  for (const auto& sequence : sequences) {
    for (int j = 1; j <= lags; ++j) {
      const std::string prefix = sequence.name.empty() ? "" : sequence.name + ".";
      out.names.push_back(prefix + "lag." + std::to_string(j));
    }
  }

  const auto columns = static_cast<std::ptrdiff_t>(out.names.size());
  out.values.resize(row_count, columns);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < columns; ++c) {
    const auto& sequence = sequences[static_cast<std::size_t>(c) / lag_count];
    const std::size_t lag = static_cast<std::size_t>(c) % lag_count;  // lag.j has lag = j - 1
    for (std::size_t r = 0; r < rows; ++r) {
      out.values(static_cast<Eigen::Index>(r), c) = sequence.values[out.times[r] - 1 - lag];
    }
  }
  return out;
}

FeatureMatrix lag_matrix(std::span<const double> series, int max_lag, int horizon) {
  const NamedSequence raw{"", series};
  return lagged_design(std::span(&raw, 1), series, max_lag, horizon);
}

std::vector<std::string> coefficient_sequence_names(const TransformConfig& config) {
  std::vector<std::string> names{""};
  const std::string levels = std::to_string(config.levels);
  if (config.mode == Mode::Ndwt) {
    for (int level = 1; level <= config.levels; ++level) {
      names.push_back("ndwt.L" + std::to_string(level) + ".detail");
    }
    names.push_back("ndwt.L" + levels + ".smooth");
  } else {
    for (std::size_t i = 0; i < packet_count(config.levels); ++i) {
      const NodeId node = node_at(Mode::Nwpt, i);
      names.push_back("nwpt.L" + std::to_string(node.level) + ".p" + std::to_string(node.packet));
    }
  }
  return names;
}

FeatureMatrix coefficient_features(std::span<const double> series, const TransformConfig& config,
                                   int lags_per_vector, int horizon) {
  const CoefficientTable table = transform_series(config, series);
  const std::vector<std::string> names = coefficient_sequence_names(config);

  std::vector<NamedSequence> sequences;
  sequences.reserve(names.size());
  sequences.push_back({names[0], series});
  if (config.mode == Mode::Ndwt) {
    for (int level = 1; level <= config.levels; ++level) {
      sequences.push_back({names[static_cast<std::size_t>(level)], table.at({level, 1})});
    }
    sequences.push_back({names.back(), table.at({config.levels, 0})});
  } else {
    for (std::size_t i = 0; i < table.nodes.size(); ++i) {
      sequences.push_back({names[i + 1], table.nodes[i]});
    }
  }
  return lagged_design(sequences, series, lags_per_vector, horizon);
}

FeatureMatrix select_rows(const FeatureMatrix& matrix, std::span<const Eigen::Index> rows) {
  FeatureMatrix out;
  out.names = matrix.names;
  out.horizon = matrix.horizon;
  const auto count = static_cast<Eigen::Index>(rows.size());
  out.values.resize(count, matrix.cols());
  out.target.resize(count);
  out.times.reserve(rows.size());
  for (Eigen::Index r = 0; r < count; ++r) {
    const Eigen::Index source = rows[static_cast<std::size_t>(r)];
    out.values.row(r) = matrix.values.row(source);
    out.target(r) = matrix.target(source);
    out.times.push_back(matrix.times[static_cast<std::size_t>(source)]);
  }
  return out;
}

FeatureMatrix select_columns(const FeatureMatrix& matrix, std::span<const Eigen::Index> columns) {
  FeatureMatrix out;
  out.horizon = matrix.horizon;
  out.times = matrix.times;
  out.target = matrix.target;
  out.values.resize(matrix.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out.values.col(static_cast<Eigen::Index>(c)) = matrix.values.col(columns[c]);
    out.names.push_back(matrix.names[static_cast<std::size_t>(columns[c])]);
  }
  return out;
}

ZScore ZScore::fit(const Eigen::MatrixXd& train) {
  ZScore z;
  const Eigen::Index rows = train.rows();
  const Eigen::Index cols = train.cols();
  z.mean = Eigen::VectorXd::Zero(cols);
  z.sd = Eigen::VectorXd::Zero(cols);
  if (rows == 0) return z;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto column = train.col(c);
    const double mean = column.sum() / static_cast<double>(rows);
    z.mean(c) = mean;
    if (rows < 2) continue;
    const double squares = (column.array() - mean).square().sum();
    const double sd = std::sqrt(squares / static_cast<double>(rows - 1));
    // Rounding leaves constant columns with sd ~ 1e-16 |x|; treat as constant.
    if (sd > 1e-12 * column.cwiseAbs().maxCoeff()) z.sd(c) = sd;
  }
  return z;
}

Eigen::MatrixXd ZScore::apply(const Eigen::MatrixXd& values) const {
  if (values.cols() != mean.size()) throw std::invalid_argument("zscore column count mismatch");
  Eigen::MatrixXd out(values.rows(), values.cols());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    if (sd(c) == 0.0) {
      out.col(c).setZero();
    } else {
      out.col(c) = (values.col(c).array() - mean(c)) / sd(c);
    }
  }
  return out;
}

Selection ridge_topk_select(const FeatureMatrix& train, const SelectorSpec& spec) {
  if (spec.method != SelectorMethod::RidgeTopK) {
    throw std::invalid_argument("ridge_topk_select needs a ridge selector");
  }
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("selector alpha must be > 0");
  if (spec.k < 1 || spec.k > train.cols()) {
    throw std::invalid_argument("selector k must be in 1.." + std::to_string(train.cols()));
  }
  const RidgeModel model = ridge_fit(train.values, train.target, spec.alpha);
  const Eigen::VectorXd magnitude = model.coefficients.cwiseAbs();
  const double largest = magnitude.size() > 0 ? magnitude.maxCoeff() : 0.0;

  // Quantised keys give a strict weak order that still ties coefficients
  // differing only by solver rounding (e.g. duplicated columns).
  std::vector<long long> key(static_cast<std::size_t>(magnitude.size()), 0);
  if (largest > 0.0) {
    for (Eigen::Index c = 0; c < magnitude.size(); ++c) {
      key[static_cast<std::size_t>(c)] = std::llround(magnitude(c) / largest * 1e12);
    }
  }

  Selection selection;
  selection.k = static_cast<std::size_t>(spec.k);
  selection.ranking.resize(static_cast<std::size_t>(train.cols()));
  std::iota(selection.ranking.begin(), selection.ranking.end(), Eigen::Index{0});
  std::sort(selection.ranking.begin(), selection.ranking.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto ia = static_cast<std::size_t>(a);
    const auto ib = static_cast<std::size_t>(b);
    if (key[ia] != key[ib]) return key[ia] > key[ib];
    return train.names[ia] < train.names[ib];
  });
  for (Eigen::Index c : selection.ranking) selection.scores.push_back(magnitude(c));
  return selection;
}

Eigen::MatrixXd PcaModel::scores(const Eigen::MatrixXd& values) const {
  return (values.rowwise() - center.transpose()) * loadings;
}

PcaModel pca_topk(const Eigen::MatrixXd& train, int k) {
  const Eigen::Index rows = train.rows();
  const Eigen::Index cols = train.cols();
  if (rows < 2) throw std::invalid_argument("pca needs at least two rows");
  if (k < 1 || k > std::min(rows, cols)) {
    throw std::invalid_argument("pca k must be in 1.." + std::to_string(std::min(rows, cols)));
  }

  PcaModel model;
  model.center = train.colwise().mean().transpose();
  const Eigen::MatrixXd centred = train.rowwise() - model.center.transpose();
  const double denominator = static_cast<double>(rows - 1);
  model.total_variance = centred.squaredNorm() / denominator;
  model.loadings.resize(cols, k);
  model.eigenvalues.resize(k);

  if (rows >= cols) {
    const Eigen::MatrixXd covariance = centred.transpose() * centred / denominator;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    for (Eigen::Index i = 0; i < k; ++i) {
      model.eigenvalues(i) = solver.eigenvalues()(cols - 1 - i);
      model.loadings.col(i) = solver.eigenvectors().col(cols - 1 - i);
    }
  } else {
    const Eigen::MatrixXd gram = centred * centred.transpose() / denominator;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double lambda = solver.eigenvalues()(rows - 1 - i);
      if (!(lambda > 1e-12 * model.total_variance)) {
        throw std::invalid_argument("pca component " + std::to_string(i + 1) +
                                    " has zero variance");
      }
      model.eigenvalues(i) = lambda;
      model.loadings.col(i) = (centred.transpose() * solver.eigenvectors().col(rows - 1 - i)) /
                              std::sqrt(denominator * lambda);
    }
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::Index pivot = 0;
    model.loadings.col(i).cwiseAbs().maxCoeff(&pivot);
    if (model.loadings(pivot, i) < 0.0) model.loadings.col(i) *= -1.0;
  }
  return model;
}

FeatureMatrix project(const FeatureMatrix& matrix, const PcaModel& model) {
  FeatureMatrix out;
  out.horizon = matrix.horizon;
  out.times = matrix.times;
  out.target = matrix.target;
  out.values = model.scores(matrix.values);
  for (Eigen::Index i = 0; i < model.loadings.cols(); ++i) {
    out.names.push_back("pca.c" + std::to_string(i + 1));
  }
  return out;
}

}  // namespace wavecast
