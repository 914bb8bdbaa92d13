#pragma once

#include <Eigen/Dense>

namespace wavecast {

/// Ridge regression with an unpenalised intercept.
struct RidgeModel {
  double alpha = 1.0;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd feature_means;
  double intercept = 0.0;
  /// ||A b - r|| / ||r|| for the centred normal equations A = X'X + alpha I.
  double relative_residual = 0.0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;
};

/// Centres X and y on their training means, then solves
/// (Xc'Xc + alpha I) beta = Xc'(y - ybar) by Cholesky; intercept = ybar - xbar'beta.
/// Throws std::invalid_argument for alpha <= 0, no rows, or mismatched sizes,
/// and NonFiniteInput for NaN/inf entries.
RidgeModel ridge_fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& target, double alpha);

}  // namespace wavecast
