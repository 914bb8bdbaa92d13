#include "wavecast/denoise.hpp"

#include <cmath>

#include "wavecast/filterbank.hpp"
#include "wavecast/transform.hpp"

namespace wavecast {

std::vector<double> haar_threshold_denoise(std::span<const double> series, int levels,
                                           double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
  StreamingTransform state(make_config(Mode::Ndwt, 1, levels));
  const FilterPair& haar = state.config().filter;
  const double h1 = haar.h[1];
  const double g1 = haar.g[1];

  std::vector<double> out;
  out.reserve(series.size());
  for (double value : series) {
    const CoefficientFrame frame = state.push(value);
    double smooth = frame.smooth(levels);
    for (int level = levels; level >= 1; --level) {
      double detail = frame.detail(level);
      if (std::abs(detail) < lambda) detail = 0.0;
      smooth = h1 * smooth + g1 * detail;
    }
    out.push_back(smooth);
  }
  return out;
}

InvertibilityReport online_invertibility_report(int number) {
  const FilterPair filter = daubechies_filter(number);
  const auto width = static_cast<Eigen::Index>(filter.width());
  const Eigen::Index pairs = width - 1;
  const Eigen::Index size = 2 * pairs;

  InvertibilityReport report;
  report.number = number;
  report.width = static_cast<int>(width);
  report.matrix = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index p = 0; p < pairs; ++p) {
    for (Eigen::Index n = 0; n < width; ++n) {
      report.matrix(2 * p, p + n) = filter.h[static_cast<std::size_t>(n)];
      report.matrix(2 * p + 1, p + n) = filter.g[static_cast<std::size_t>(n)];
    }
  }

  report.det_magnitude = std::abs(report.matrix.partialPivLu().determinant());
  const Eigen::VectorXcd eigenvalues = report.matrix.eigenvalues();
  report.eigen_det_magnitude = 1.0;
  for (const auto& lambda : eigenvalues) report.eigen_det_magnitude *= std::abs(lambda);

  const Eigen::MatrixXd gram = report.matrix * report.matrix.transpose();
  report.orthonormal =
      (gram - Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff() < 1e-10;
  return report;
}

}  // namespace wavecast
