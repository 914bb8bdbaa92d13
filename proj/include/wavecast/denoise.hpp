#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wavecast {

/// Causal Haar hard-threshold denoiser. Each step runs the streaming Haar
/// NDWT, zeroes details with |d| < lambda, then undoes the orthonormal 2x2
/// Haar step from the coarsest level down using only time-t coefficients:
///
///   c_{l-1,t} = h_1 c_{l,t} + g_1 d_{l,t}
///
/// lambda = 0 reproduces the input; lambda = +inf returns the causal
/// reconstruction from smooths alone.
std::vector<double> haar_threshold_denoise(std::span<const double> series, int levels,
                                           double lambda);

struct InvertibilityReport {
  int number = 0;
  int width = 0;
  Eigen::MatrixXd matrix;
  double det_magnitude = 0.0;       // via partial-pivot LU
  double eigen_det_magnitude = 0.0; // product of |eigenvalues|
  bool orthonormal = false;         // M M^T == I within 1e-10
};

/// Builds the square banded matrix of W-1 stacked (h; g) row pairs, each pair
/// shifted one column right of the previous, and reports whether it can be
/// inverted stably. Only W = 2 yields an orthonormal (rotation) matrix.
InvertibilityReport online_invertibility_report(int number);

}  // namespace wavecast
