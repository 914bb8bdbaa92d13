#include "wavecast/ridge.hpp"

#include <stdexcept>
#include <string>

#include "wavecast/error.hpp"

namespace wavecast {

Eigen::VectorXd RidgeModel::predict(const Eigen::MatrixXd& features) const {
  if (features.cols() != coefficients.size()) {
    throw std::invalid_argument("ridge model expects " + std::to_string(coefficients.size()) +
                                " features, got " + std::to_string(features.cols()));
  }
  return (features * coefficients).array() + intercept;
}

RidgeModel ridge_fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& target, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ridge alpha must be > 0");
  if (features.rows() == 0) throw std::invalid_argument("ridge fit needs at least one row");
  if (features.rows() != target.size()) {
    throw std::invalid_argument("ridge fit: " + std::to_string(features.rows()) + " rows but " +
                                std::to_string(target.size()) + " targets");
  }
  if (!features.allFinite() || !target.allFinite()) {
    throw NonFiniteInput("ridge fit input contains non-finite values");
  }

  RidgeModel model;
  model.alpha = alpha;
  model.feature_means = features.colwise().mean().transpose();
  const double target_mean = target.mean();

  const Eigen::MatrixXd centred = features.rowwise() - model.feature_means.transpose();
  const Eigen::VectorXd response = target.array() - target_mean;

  Eigen::MatrixXd system = centred.transpose() * centred;
  system.diagonal().array() += alpha;
  const Eigen::VectorXd rhs = centred.transpose() * response;

  const Eigen::LLT<Eigen::MatrixXd> cholesky(system);
  if (cholesky.info() != Eigen::Success) {
    throw std::runtime_error("ridge normal equations are not positive definite");
  }
  model.coefficients = cholesky.solve(rhs);
  model.intercept = target_mean - model.feature_means.dot(model.coefficients);

  const double scale = rhs.norm();
  const double residual = (system * model.coefficients - rhs).norm();
  model.relative_residual = scale > 0.0 ? residual / scale : residual;
  return model;
}

}  // namespace wavecast
