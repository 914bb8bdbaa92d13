#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavecast/transform.hpp"

namespace wavecast {

/// Causal design matrix. Row r describes time times[r] (1-based) using only
/// observations up to that time, and target(r) is y_{times[r] + horizon}.
struct FeatureMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
  std::vector<std::size_t> times;
  Eigen::VectorXd target;
  int horizon = 1;

  Eigen::Index rows() const noexcept { return values.rows(); }
  Eigen::Index cols() const noexcept { return values.cols(); }
};

struct NamedSequence {
  std::string name;  // empty for the raw series, giving columns lag.1, lag.2, ...
  std::span<const double> values;
};

/// Columns `<name>.lag.j` (j = 1..lags) hold sequence value at t - j + 1.
/// Rows run from t = lags to T - horizon; the target comes from `series`.
FeatureMatrix lagged_design(std::span<const NamedSequence> sequences,
                            std::span<const double> series, int lags, int horizon);

/// Throws InsufficientData when T < max_lag + horizon.
FeatureMatrix lag_matrix(std::span<const double> series, int max_lag, int horizon);

/// Names of the coefficient sequences used as features, raw series first.
/// NDWT: raw, the L details and the level-L smooth (L + 2 names, matching
/// "one vector per scale plus the original series" with the smooth as the
/// coarsest scale). NWPT: raw plus all 2^{L+1} - 2 packets.
std::vector<std::string> coefficient_sequence_names(const TransformConfig& config);

/// Runs the causal transform over the series and lags every coefficient
/// sequence (plus the raw series) by 1..lags_per_vector.
FeatureMatrix coefficient_features(std::span<const double> series, const TransformConfig& config,
                                   int lags_per_vector, int horizon);

FeatureMatrix select_rows(const FeatureMatrix& matrix, std::span<const Eigen::Index> rows);
FeatureMatrix select_columns(const FeatureMatrix& matrix, std::span<const Eigen::Index> columns);

/// Column standardisation fitted on training rows (sd with n - 1).
/// Columns whose sd is negligible relative to their mean map to zero.
struct ZScore {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;  // 0 marks a constant column

  static ZScore fit(const Eigen::MatrixXd& train);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& values) const;
};

enum class SelectorMethod { RidgeTopK, PcaTopK };

struct SelectorSpec {
  SelectorMethod method = SelectorMethod::RidgeTopK;
  int k = 1;
  double alpha = 1.0;
};

struct Selection {
  std::vector<Eigen::Index> ranking;  // all columns, best first
  std::vector<double> scores;         // |coefficient| in ranking order
  std::size_t k = 0;

  std::span<const Eigen::Index> kept() const { return {ranking.data(), k}; }
};

/// Ranks columns by |ridge coefficient|, descending. Coefficients equal to
/// 12 significant digits tie and fall back to lexicographic name order.
Selection ridge_topk_select(const FeatureMatrix& train, const SelectorSpec& spec);

struct PcaModel {
  Eigen::VectorXd center;
  Eigen::MatrixXd loadings;     // p x k, orthonormal columns
  Eigen::VectorXd eigenvalues;  // k leading covariance eigenvalues, descending
  double total_variance = 0.0;

  Eigen::MatrixXd scores(const Eigen::MatrixXd& values) const;
  Eigen::VectorXd explained_ratio() const { return eigenvalues / total_variance; }
};

/// Leading k principal directions of the training covariance (n - 1), using
/// the n x n Gram matrix when rows < cols. Each component is oriented so its
/// largest-magnitude loading is positive.
PcaModel pca_topk(const Eigen::MatrixXd& train, int k);

/// Replaces the columns by k component scores named pca.c1..pca.ck.
FeatureMatrix project(const FeatureMatrix& matrix, const PcaModel& model);

}  // namespace wavecast
