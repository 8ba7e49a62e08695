#include <doctest.h>

#include <cmath>

#include "support/stats.hpp"
#include "tvp/model.hpp"

using namespace tvp;

TEST_SUITE("model") {

TEST_CASE("standardize_covariates basics") {
  Eigen::MatrixXd X(3, 2);
  X << 1, 1, 1, 2, 1, 3;
  const auto st = standardize_covariates(X, 0);
  CHECK(st.X.col(0).isApprox(Eigen::VectorXd::Ones(3)));
  CHECK(st.X(0, 1) == doctest::Approx(-1.0));
  CHECK(st.X(1, 1) == doctest::Approx(0.0));
  CHECK(st.X(2, 1) == doctest::Approx(1.0));
  CHECK(st.means(1) == doctest::Approx(2.0));
  CHECK(st.sds(1) == doctest::Approx(1.0));

  // standardized columns: mean 0, sample variance 1
  Rng rng(3);
  Eigen::MatrixXd R(200, 3);
  for (int i = 0; i < R.size(); ++i) R(i / 3, i % 3) = 2.0 + 3.0 * draw_normal(rng);
  const auto st2 = standardize_covariates(R, std::nullopt);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::fabs(st2.X.col(j).mean()) < 1e-10);
    const double v = st2.X.col(j).squaredNorm() / (R.rows() - 1);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  }

  // idempotent
  const auto st3 = standardize_covariates(st2.X, std::nullopt);
  CHECK((st3.X - st2.X).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standardize_covariates rejects degenerate columns") {
  Eigen::MatrixXd X(3, 1);
  X << 5, 5, 5;
  CHECK_THROWS_WITH_AS(standardize_covariates(X, std::nullopt),
                       "standardize_covariates: column 0 has zero variance",
                       std::invalid_argument);
}

TEST_CASE("simulate_tvp structure") {
  Rng rng(11);
  SimSpec spec;
  spec.beta = Eigen::Vector3d(1.5, -0.3, 0.0);
  spec.theta = Eigen::Vector3d(0.02, 0.0, 0.0);
  spec.sigma2 = 1.0;
  const auto [data, truth] = simulate_tvp(3, 200, spec, rng);
  CHECK(data.T() == 200);
  CHECK(data.d() == 3);
  CHECK((data.X.col(0).array() == 1.0).all());
  // zero innovation variance: constant paths at the initial value
  CHECK((truth.paths.col(1).array() == truth.paths(0, 1)).all());
  CHECK(truth.paths(0, 1) == doctest::Approx(-0.3));
  CHECK((truth.paths.col(2).array() == 0.0).all());

  // determinism
  Rng r1(99), r2(99);
  const auto a = simulate_tvp(2, 50, SimSpec{Eigen::Vector2d(1, 2), Eigen::Vector2d(0.1, 0), 1.0, 1.0}, r1);
  const auto b = simulate_tvp(2, 50, SimSpec{Eigen::Vector2d(1, 2), Eigen::Vector2d(0.1, 0), 1.0, 1.0}, r2);
  CHECK(a.first.y == b.first.y);
  CHECK(a.first.X == b.first.X);
}

TEST_CASE("simulate_tvp increment variance") {
  Rng rng(17);
  SimSpec spec;
  spec.beta = Eigen::Vector2d(0.0, 1.0);
  spec.theta = Eigen::Vector2d(0.5, 0.02);
  spec.sigma2 = 1.0;
  const int T = 100000;
  const auto [data, truth] = simulate_tvp(2, T, spec, rng);
  (void)data;
  for (int j = 0; j < 2; ++j) {
    std::vector<double> incr(T);
    for (int t = 1; t <= T; ++t) incr[t - 1] = truth.paths(t, j) - truth.paths(t - 1, j);
    // Var of squared-normal mean: se ~ theta sqrt(2/T)
    const auto chk = oracle::check_variance(incr, spec.theta(j));
    CHECK(chk.within(4.0));
  }
}

TEST_CASE("path transformations") {
  Eigen::VectorXd beta(1), st(1);
  beta << 1.5;
  st << 0.1;
  Eigen::MatrixXd bt(1, 1);
  bt << 2.0;
  CHECK(path_centered(beta, st, bt)(0, 0) == doctest::Approx(1.7));
  Eigen::MatrixXd path(1, 1);
  path << 1.7;
  CHECK(path_noncentered(path, beta, st)(0, 0) == doctest::Approx(2.0));

  // sign flip
  st << -0.1;
  CHECK(path_noncentered(path, beta, st)(0, 0) == doctest::Approx(-2.0));

  // round-trip identity on random matrices
  Rng rng(23);
  Eigen::MatrixXd btr(12, 3);
  for (int i = 0; i < btr.rows(); ++i)
    for (int j = 0; j < btr.cols(); ++j) btr(i, j) = draw_normal(rng);
  Eigen::VectorXd b3(3), s3(3);
  b3 << 0.3, -2.0, 0.0;
  s3 << 0.5, -1e-4, 3.0;
  const auto round = path_noncentered(path_centered(b3, s3, btr), b3, s3);
  CHECK((round - btr).cwiseAbs().maxCoeff() < 1e-9);

  // zero scale: centered path constant, non-centered transform rejected
  s3 << 0.5, 0.0, 3.0;
  CHECK(path_centered(b3, s3, btr).col(1).isConstant(-2.0));
  CHECK_THROWS_AS(path_noncentered(btr, b3, s3), std::invalid_argument);
}

TEST_CASE("prior config validation") {
  PriorConfig p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.effective_G0() == doctest::Approx(5.0 / 1.5));
  p.b_xi = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  PriorConfig lasso;
  lasso.variant = PriorVariant::BayesianLasso;
  CHECK(lasso.a_xi_value() == 1.0);
  CHECK(lasso.a_tau_value() == 1.0);
  CHECK_FALSE(lasso.learn_a_xi());
}

TEST_CASE("dataset validation") {
  Dataset d;
  d.y = Eigen::VectorXd::Zero(5);
  d.X = Eigen::MatrixXd::Ones(5, 1);
  CHECK_NOTHROW(d.validate());
  d.X(2, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

}  // TEST_SUITE
