#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "wavecast/error.hpp"
#include "wavecast/featureset.hpp"
#include "wavecast/ridge.hpp"

using namespace wavecast;

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("lag matrix examples") {
  const auto m = lag_matrix(std::vector<double>{1, 2, 3}, 1, 1);
  REQUIRE(m.rows() == 2);
  CHECK(m.names == std::vector<std::string>{"lag.1"});
  CHECK(m.values(0, 0) == 1.0);
  CHECK(m.target(0) == 2.0);
  CHECK(m.values(1, 0) == 2.0);
  CHECK(m.target(1) == 3.0);
  CHECK(m.times == std::vector<std::size_t>{1, 2});

  const auto y = oracle::random_series(40, 3);
  CHECK(lag_matrix(y, 37, 3).rows() == 1);
  CHECK_THROWS_AS(lag_matrix(y, 38, 3), InsufficientData);
  CHECK_THROWS_AS(lag_matrix(y, 0, 1), std::invalid_argument);
}

TEST_CASE("lag columns follow index arithmetic") {
  const auto y = oracle::random_series(120, 9);
  for (int h : {1, 4}) {
    const auto m = lag_matrix(y, 12, h);
    CHECK(m.rows() == static_cast<Eigen::Index>(120 - 12 - h + 1));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const std::size_t t = m.times[static_cast<std::size_t>(r)];
      CHECK(m.target(r) == y[t + static_cast<std::size_t>(h) - 1]);
      for (int j = 1; j <= 12; ++j) CHECK(m.values(r, j - 1) == y[t - static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("coefficient feature naming and counts") {
  const auto ndwt = make_config(Mode::Ndwt, 2, 3);
  const std::vector<std::string> expected{"", "ndwt.L1.detail", "ndwt.L2.detail", "ndwt.L3.detail",
                                          "ndwt.L3.smooth"};
  CHECK(coefficient_sequence_names(ndwt) == expected);

  const auto y = oracle::random_series(100, 4);
  const auto m = coefficient_features(y, ndwt, 2, 1);
  CHECK(m.cols() == 10);
  CHECK(m.names[0] == "lag.1");
  CHECK(m.names[1] == "lag.2");
  CHECK(m.names[2] == "ndwt.L1.detail.lag.1");
  CHECK(m.names[9] == "ndwt.L3.smooth.lag.2");
  CHECK(std::set(m.names.begin(), m.names.end()).size() == m.names.size());

  const auto nwpt = make_config(Mode::Nwpt, 1, 2);
  const auto names = coefficient_sequence_names(nwpt);
  CHECK(names.size() == 7);
  CHECK(names[1] == "nwpt.L1.p0");
  CHECK(names[6] == "nwpt.L2.p3");
  CHECK(coefficient_features(y, nwpt, 1, 1).cols() == 7);
}

TEST_CASE("coefficient features carry the transform values") {
  const auto y = oracle::random_series(80, 5);
  const auto config = make_config(Mode::Ndwt, 3, 2);
  const auto expected = oracle::ndwt(y, config.filter, 2);
  const auto m = coefficient_features(y, config, 3, 2);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const std::size_t t = m.times[static_cast<std::size_t>(r)];
    for (std::size_t j = 1; j <= 3; ++j) {
      CHECK(std::abs(m.values(r, 3 + static_cast<Eigen::Index>(j) - 1) - expected.detail[0][t - j]) < 1e-12);
      CHECK(std::abs(m.values(r, 9 + static_cast<Eigen::Index>(j) - 1) - expected.smooth[1][t - j]) < 1e-12);
    }
  }
}

TEST_CASE("constant series zeroes detail columns") {
  const std::vector<double> y(64, 2.0);
  const auto m = coefficient_features(y, make_config(Mode::Ndwt, 4, 3), 2, 1);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (m.names[static_cast<std::size_t>(c)].find("detail") == std::string::npos) continue;
    CHECK(m.values.col(c).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("causality audit on features") {
  const auto y = oracle::random_series(300, 6);
  for (std::size_t cut : {50u, 151u, 299u}) {
    auto perturbed = y;
    for (std::size_t i = cut; i < perturbed.size(); ++i) perturbed[i] += 100.0 + static_cast<double>(i);
    const std::vector<std::function<FeatureMatrix(const std::vector<double>&)>> builders{
        [](const auto& s) { return lag_matrix(s, 20, 1); },
        [](const auto& s) { return coefficient_features(s, make_config(Mode::Ndwt, 5, 4), 3, 1); },
        [](const auto& s) { return coefficient_features(s, make_config(Mode::Nwpt, 2, 3), 1, 1); },
    };
    for (const auto& build : builders) {
      const auto a = build(y);
      const auto b = build(perturbed);
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        if (a.times[static_cast<std::size_t>(r)] > cut) break;
        CHECK(a.values.row(r) == b.values.row(r));
      }
    }
  }
}

TEST_CASE("z-score") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 5, 2, 5, 3, 5;
  const auto z = ZScore::fit(x);
  const Eigen::MatrixXd out = z.apply(x);
  CHECK(z.sd(0) == doctest::Approx(1.0));  // sqrt(((1-2)^2 + 0 + (3-2)^2) / 2)
  CHECK(out(0, 0) == doctest::Approx(-1.0));
  CHECK(out(1, 0) == doctest::Approx(0.0));
  CHECK(out(2, 0) == doctest::Approx(1.0));
  CHECK(z.sd(1) == 0.0);
  CHECK(out.col(1).isZero());

  const Eigen::MatrixXd g = gaussian_matrix(200, 5, 1) * 3.0 + Eigen::MatrixXd::Constant(200, 5, 7.0);
  const Eigen::MatrixXd once = ZScore::fit(g).apply(g);
  for (Eigen::Index c = 0; c < 5; ++c) {
    CHECK(std::abs(once.col(c).mean()) < 1e-10);
    const double sd = std::sqrt((once.col(c).array() - once.col(c).mean()).square().sum() / 199.0);
    CHECK(std::abs(sd - 1.0) < 1e-10);
  }
  const Eigen::MatrixXd twice = ZScore::fit(once).apply(once);
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ridge matches the full-inverse normal equations") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Eigen::MatrixXd x = gaussian_matrix(5, 3, seed);
    const Eigen::VectorXd y = gaussian_matrix(5, 1, seed + 100).col(0);
    const double alpha = 0.7;
    const auto model = ridge_fit(x, y, alpha);

    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - mean;
    const Eigen::VectorXd yc = y.array() - y.mean();
    const Eigen::MatrixXd a = xc.transpose() * xc + alpha * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::VectorXd beta = a.inverse() * (xc.transpose() * yc);
    CHECK((model.coefficients - beta).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(model.intercept - (y.mean() - mean.dot(beta))) < 1e-10);
    CHECK(model.relative_residual <= 1e-8);
  }
}

TEST_CASE("ridge limits and equivariance") {
  const Eigen::MatrixXd x = gaussian_matrix(50, 1, 2);
  const Eigen::VectorXd y = 2.0 * x.col(0);
  CHECK(ridge_fit(x, y, 1e-10).coefficients(0) == doctest::Approx(2.0).epsilon(1e-6));

  const Eigen::MatrixXd xs = gaussian_matrix(40, 4, 3);
  const Eigen::VectorXd ys = gaussian_matrix(40, 1, 4).col(0);
  const auto heavy = ridge_fit(xs, ys, 1e12);
  CHECK(heavy.coefficients.cwiseAbs().maxCoeff() < 1e-6);
  CHECK((heavy.predict(xs).array() - ys.mean()).abs().maxCoeff() < 1e-6);

  const auto base = ridge_fit(xs, ys, 0.5);
  const Eigen::VectorXd moved = 3.5 * ys.array() - 11.0;
  const auto affine = ridge_fit(xs, moved, 0.5);
  const Eigen::VectorXd expected = 3.5 * base.predict(xs).array() - 11.0;
  CHECK((affine.predict(xs) - expected).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(ridge_fit(xs, ys, 0.0), std::invalid_argument);
  Eigen::MatrixXd bad = xs;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(ridge_fit(bad, ys, 1.0), NonFiniteInput);
}

TEST_CASE("ridge top-k selection") {
  SUBCASE("the generating column wins for every seed") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      FeatureMatrix m;
      m.values = gaussian_matrix(200, 8, seed);
      for (int c = 0; c < 8; ++c) m.names.push_back("f" + std::to_string(c));
      m.values = ZScore::fit(m.values).apply(m.values);
      m.target = m.values.col(5);
      const auto sel = ridge_topk_select(m, {SelectorMethod::RidgeTopK, 1, 1.0});
      CHECK(sel.kept().size() == 1);
      CHECK(sel.kept()[0] == 5);
      CHECK(ridge_topk_select(m, {SelectorMethod::RidgeTopK, 1, 1.0}).ranking == sel.ranking);
    }
  }
  SUBCASE("exact duplicates tie and go to the first name") {
    FeatureMatrix m;
    m.values = gaussian_matrix(100, 3, 7);
    m.values.col(2) = m.values.col(0);
    m.names = {"zeta", "noise", "alpha"};
    m.target = m.values.col(0) + 0.1 * m.values.col(1);
    const auto sel = ridge_topk_select(m, {SelectorMethod::RidgeTopK, 1, 1.0});
    CHECK(sel.ranking[0] == 2);
    CHECK(sel.ranking[1] == 0);
    CHECK(sel.scores[0] == doctest::Approx(sel.scores[1]).epsilon(1e-12));
  }
  SUBCASE("k = p keeps every column") {
    FeatureMatrix m;
    m.values = gaussian_matrix(30, 4, 8);
    m.names = {"a", "b", "c", "d"};
    m.target = gaussian_matrix(30, 1, 9).col(0);
    const auto sel = ridge_topk_select(m, {SelectorMethod::RidgeTopK, 4, 1.0});
    std::vector<Eigen::Index> kept(sel.kept().begin(), sel.kept().end());
    std::sort(kept.begin(), kept.end());
    CHECK(kept == std::vector<Eigen::Index>{0, 1, 2, 3});
    for (std::size_t i = 1; i < sel.scores.size(); ++i) CHECK(sel.scores[i - 1] >= sel.scores[i]);
    CHECK_THROWS(ridge_topk_select(m, {SelectorMethod::RidgeTopK, 5, 1.0}));
    CHECK_THROWS(ridge_topk_select(m, {SelectorMethod::RidgeTopK, 2, 0.0}));
  }
}

TEST_CASE("pca") {
  SUBCASE("points on a line") {
    Eigen::MatrixXd x(50, 2);
    for (int i = 0; i < 50; ++i) {
      x(i, 0) = i * 0.1;
      x(i, 1) = -2.0 * i * 0.1 + 1.0;
    }
    const auto model = pca_topk(x, 2);
    CHECK(std::abs(model.eigenvalues(0) - model.total_variance) < 1e-8);
    CHECK(std::abs(model.eigenvalues(1)) < 1e-8);
    // largest loading positive: (-1, 2)/sqrt5
    CHECK(model.loadings(1, 0) > 0.0);
  }
  SUBCASE("orthonormal loadings and centred scores") {
    for (auto [rows, cols] : {std::pair{200, 6}, std::pair{8, 30}}) {
      const Eigen::MatrixXd x = gaussian_matrix(rows, cols, 11);
      const auto model = pca_topk(x, 4);
      const Eigen::MatrixXd gram = model.loadings.transpose() * model.loadings;
      CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
      const Eigen::MatrixXd scores = model.scores(x);
      for (Eigen::Index c = 0; c < 4; ++c) CHECK(std::abs(scores.col(c).mean()) < 1e-10);
      for (Eigen::Index c = 1; c < 4; ++c) CHECK(model.eigenvalues(c - 1) >= model.eigenvalues(c));
    }
  }
  SUBCASE("gram route agrees with the covariance route") {
    const Eigen::MatrixXd x = gaussian_matrix(10, 12, 12);
    const auto wide = pca_topk(x, 3);
    const Eigen::MatrixXd centred = x.rowwise() - x.colwise().mean();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centred.transpose() * centred / 9.0);
    for (int c = 0; c < 3; ++c) {
      CHECK(wide.eigenvalues(c) == doctest::Approx(solver.eigenvalues()(11 - c)).epsilon(1e-9));
    }
  }
  SUBCASE("isotropic split") {
    const auto model = pca_topk(gaussian_matrix(10000, 2, 13), 2);
    const Eigen::VectorXd ratio = model.explained_ratio();
    CHECK(std::abs(ratio(0) - 0.5) < 0.05 * 0.5);
    CHECK(std::abs(ratio(1) - 0.5) < 0.05 * 0.5);
  }
  SUBCASE("projection names") {
    FeatureMatrix m;
    m.values = gaussian_matrix(20, 5, 14);
    m.names = {"a", "b", "c", "d", "e"};
    m.target = Eigen::VectorXd::Zero(20);
    m.times.resize(20);
    const auto p = project(m, pca_topk(m.values, 2));
    CHECK(p.names == std::vector<std::string>{"pca.c1", "pca.c2"});
    CHECK(p.cols() == 2);
    CHECK_THROWS(pca_topk(m.values, 6));
  }
}
