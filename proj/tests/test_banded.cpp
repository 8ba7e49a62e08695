#include <doctest.h>

#include <chrono>
#include <cmath>

#include "support/dense_oracle.hpp"
#include "tvp/banded.hpp"
#include "tvp/rng.hpp"

using namespace tvp;

namespace {

Eigen::MatrixXd to_dense(const PrecisionSystem& sys) {
  const int n = sys.blocks(), d = sys.block_dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int t = 0; t < n; ++t) {
    out.block(t * d, t * d, d, d) = sys.diag[t];
    if (t + 1 < n) {
      out.block(t * d, (t + 1) * d, d, d) = sys.off[t];
      out.block((t + 1) * d, t * d, d, d) = sys.off[t].transpose();
    }
  }
  return out;
}

PrecisionSystem random_system(int T, int d, Rng& rng) {
  Eigen::MatrixXd X(T, d);
  Eigen::VectorXd beta(d), st(d), P0(d), y(T), s2(T);
  for (int i = 0; i < X.size(); ++i) X(i / d, i % d) = draw_normal(rng);
  for (int j = 0; j < d; ++j) {
    beta(j) = draw_normal(rng);
    st(j) = 0.3 * draw_normal(rng);
    P0(j) = 0.5 + draw_uniform(rng);
  }
  for (int t = 0; t < T; ++t) {
    y(t) = draw_normal(rng);
    s2(t) = 0.5 + draw_uniform(rng);
  }
  return build_precision(X, beta, st, s2, P0, y);
}

}  // namespace

TEST_SUITE("banded") {

TEST_CASE("hand-checked d=1, T=1 system") {
  Eigen::MatrixXd X(1, 1);
  X << 1.0;
  Eigen::VectorXd beta(1), st(1), s2(1), P0(1), y(1);
  beta << 0.0;
  st << 0.5;
  s2 << 1.0;
  P0 << 1.0;
  y << 2.0;
  const auto sys = build_precision(X, beta, st, s2, P0, y);
  CHECK(sys.diag[0](0, 0) == doctest::Approx(2.0));
  CHECK(sys.diag[1](0, 0) == doctest::Approx(1.25));
  CHECK(sys.off[0](0, 0) == doctest::Approx(-1.0));
  CHECK(sys.covector(0) == doctest::Approx(0.0));
  CHECK(sys.covector(1) == doctest::Approx(1.0));

  PrecisionSystem f = sys;
  band_cholesky(f);
  CHECK(f.chol_diag[0](0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(f.chol_sub[0](0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(f.chol_diag[1](0, 0) == doctest::Approx(std::sqrt(0.75)));
}

TEST_CASE("zero scales remove the data terms") {
  Rng rng(4);
  Eigen::MatrixXd X(5, 2);
  for (int i = 0; i < X.size(); ++i) X(i / 2, i % 2) = draw_normal(rng);
  const auto sys = build_precision(X, Eigen::Vector2d(1.0, -1.0), Eigen::Vector2d::Zero(),
                                   Eigen::VectorXd::Ones(5), Eigen::Vector2d(1.0, 2.0),
                                   Eigen::VectorXd::Ones(5));
  CHECK(sys.covector.isZero(0.0));
  for (int t = 1; t <= 5; ++t)
    CHECK(sys.diag[t].isApprox((t < 5 ? 2.0 : 1.0) * Eigen::Matrix2d::Identity()));
}

TEST_CASE("assembled system matches the dense joint-Gaussian oracle") {
  Rng rng(12);
  Eigen::MatrixXd X(5, 2);
  Eigen::VectorXd beta(2), st(2), P0(2), y(5), s2(5);
  for (int i = 0; i < X.size(); ++i) X(i / 2, i % 2) = draw_normal(rng);
  beta << 0.4, -0.2;
  st << 0.3, -0.7;
  P0 << 1.3, 0.6;
  for (int t = 0; t < 5; ++t) {
    y(t) = draw_normal(rng);
    s2(t) = 0.5 + draw_uniform(rng);
  }
  const auto sys = build_precision(X, beta, st, s2, P0, y);
  const auto oracle_post = oracle::dense_state_posterior(X, y, beta, st, s2, P0);
  CHECK((to_dense(sys) - oracle_post.precision).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((sys.covector - oracle_post.covector).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("band cholesky agrees with dense factorization") {
  Rng rng(21);
  auto sys = random_system(20, 3, rng);
  const Eigen::MatrixXd dense = to_dense(sys);
  band_cholesky(sys);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dense.rows(), dense.cols());
  for (int t = 0; t < sys.blocks(); ++t) {
    L.block(t * 3, t * 3, 3, 3) = sys.chol_diag[t];
    if (t + 1 < sys.blocks()) L.block((t + 1) * 3, t * 3, 3, 3) = sys.chol_sub[t];
  }
  const Eigen::MatrixXd rebuilt = L * L.transpose();
  const double rel = (rebuilt - dense).norm() / dense.norm();
  CHECK(rel < 1e-10);
  const Eigen::MatrixXd dense_L = dense.llt().matrixL();
  CHECK((L - dense_L).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("identity precision factors to identity") {
  PrecisionSystem sys;
  sys.diag.assign(4, Eigen::MatrixXd::Identity(2, 2));
  sys.off.assign(3, Eigen::MatrixXd::Zero(2, 2));
  sys.covector = Eigen::VectorXd::Zero(8);
  band_cholesky(sys);
  for (const auto& blk : sys.chol_diag) CHECK(blk.isApprox(Eigen::MatrixXd::Identity(2, 2)));
  // Omega = I, c = 0: draw equals eps
  Eigen::VectorXd eps(8);
  Rng rng(2);
  for (int i = 0; i < 8; ++i) eps(i) = draw_normal(rng);
  CHECK(awol_draw(sys, eps).isApprox(eps));
}

TEST_CASE("awol mean and covariance against the dense oracle") {
  Rng rng(31);
  Eigen::MatrixXd X(5, 2);
  Eigen::VectorXd beta(2), st(2), P0(2), y(5), s2(5);
  for (int i = 0; i < X.size(); ++i) X(i / 2, i % 2) = draw_normal(rng);
  beta << 0.2, 0.9;
  st << 0.5, -0.1;
  P0 << 0.8, 1.4;
  for (int t = 0; t < 5; ++t) {
    y(t) = draw_normal(rng);
    s2(t) = 0.4 + draw_uniform(rng);
  }
  auto sys = build_precision(X, beta, st, s2, P0, y);
  band_cholesky(sys);
  const auto post = oracle::dense_state_posterior(X, y, beta, st, s2, P0);

  // eps = 0 returns the exact mean
  CHECK((awol_draw(sys, Eigen::VectorXd::Zero(12)) - post.mean).cwiseAbs().maxCoeff() < 1e-10);

  const int N = 100000;
  Eigen::MatrixXd draws(N, 12);
  Eigen::VectorXd eps(12);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < 12; ++k) eps(k) = draw_normal(rng);
    draws.row(i) = awol_draw(sys, eps).transpose();
  }
  const Eigen::VectorXd mean = draws.colwise().mean();
  for (int k = 0; k < 12; ++k) {
    const double se = std::sqrt(post.cov(k, k) / N);
    CHECK(std::fabs(mean(k) - post.mean(k)) < 4.0 * se);
  }
  Eigen::MatrixXd centered = draws.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / (N - 1);
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) {
      const double se =
          std::sqrt((post.cov(a, a) * post.cov(b, b) + post.cov(a, b) * post.cov(a, b)) / N);
      CHECK(std::fabs(cov(a, b) - post.cov(a, b)) < 4.0 * se);
    }
}

TEST_CASE("pd failure reports the block index") {
  PrecisionSystem sys;
  sys.diag.assign(3, Eigen::MatrixXd::Identity(1, 1));
  sys.diag[2](0, 0) = -1.0;
  sys.off.assign(2, Eigen::MatrixXd::Zero(1, 1));
  sys.covector = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_WITH_AS(band_cholesky(sys), "band_cholesky: block 2 is not positive definite",
                       std::runtime_error);
}

TEST_CASE("validation errors") {
  Eigen::MatrixXd X(2, 1);
  X << 1, 1;
  CHECK_THROWS_AS(build_precision(X, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                                  Eigen::VectorXd::Zero(2),  // sigma2 = 0
                                  Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("cost scales roughly linearly in T") {
  Rng rng(8);
  auto run = [&](int T) {
    auto sys = random_system(T, 2, rng);
    const auto start = std::chrono::steady_clock::now();
    for (int rep = 0; rep < 20; ++rep) {
      auto f = sys;
      band_cholesky(f);
      (void)awol_draw(f, Eigen::VectorXd::Zero((T + 1) * 2));
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  run(4000);  // warm-up
  double t1 = 1e300, t4 = 1e300;
  for (int rep = 0; rep < 5; ++rep) {
    t1 = std::min(t1, run(1000));
    t4 = std::min(t4, run(4000));
  }
  CHECK(t4 / t1 < 6.0);
}

}  // TEST_SUITE
