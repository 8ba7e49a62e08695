#include "tvp/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tvp {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double PriorConfig::a_xi_value() const {
  if (variant == PriorVariant::BayesianLasso) return 1.0;
  return fixed_a_xi.value_or(0.1);
}

double PriorConfig::a_tau_value() const {
  if (variant == PriorVariant::BayesianLasso) return 1.0;
  return fixed_a_tau.value_or(0.1);
}

void PriorConfig::validate() const {
  require(d1 > 0 && d2 > 0, "prior: d1, d2 must be > 0");
  require(e1 > 0 && e2 > 0, "prior: e1, e2 must be > 0");
  require(b_xi >= 1.0, "prior: b_xi must be >= 1");
  require(b_tau >= 1.0, "prior: b_tau must be >= 1");
  if (fixed_a_xi) require(*fixed_a_xi > 0, "prior: fixed_a_xi must be > 0");
  if (fixed_a_tau) require(*fixed_a_tau > 0, "prior: fixed_a_tau must be > 0");
  require(s0 > 0 && S0 > 0, "prior: s0, S0 must be > 0");
  require(A0_beta > 0, "prior: A0_beta must be > 0");
  require(nu_P > 0 && c_P > 0, "prior: nu_P, c_P must be > 0");
  require(c0 > 0 && g0 > 0, "prior: c0, g0 must be > 0");
  require(sigma2_guess > 0, "prior: sigma2_guess must be > 0");
  require(effective_G0() > 0, "prior: G0 must be > 0");
  require(sv_prior.B_mu > 0 && sv_prior.a0 > 0 && sv_prior.b0 > 0 && sv_prior.B_sigma > 0,
          "prior: sv hyperparameters must be > 0");
}

void Dataset::validate(bool allow_no_regressors) const {
  require(T() >= 2, "dataset: needs at least T = 2 observations");
  require(allow_no_regressors ? d() >= 0 : d() >= 1, "dataset: needs at least one covariate");
  require(X.rows() == y.size(), "dataset: X and y row counts differ");
  require(y.allFinite() && X.allFinite(), "dataset: missing or non-finite values");
  if (t0) require(*t0 >= 1 && *t0 < T(), "dataset: t0 out of range");
}

Standardized standardize_covariates(const Eigen::MatrixXd& X, std::optional<int> intercept_col) {
  const int T = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  require(T >= 2, "standardize_covariates: needs T >= 2 rows");
  Standardized out{X, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
  for (int j = 0; j < d; ++j) {
    if (intercept_col && *intercept_col == j) continue;
    const double mean = X.col(j).mean();
    const double ss = (X.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / (T - 1));
    if (!(sd > 0.0)) {
      std::ostringstream os;
      os << "standardize_covariates: column " << j << " has zero variance";
      throw std::invalid_argument(os.str());
    }
    out.X.col(j) = (X.col(j).array() - mean) / sd;
    out.means(j) = mean;
    out.sds(j) = sd;
  }
  return out;
}

std::pair<Dataset, SimTruth> simulate_tvp(int d, int T, const SimSpec& spec, Rng& rng) {
  require(d >= 1 && T >= 2, "simulate_tvp: needs d >= 1, T >= 2");
  require(spec.beta.size() == d && spec.theta.size() == d,
          "simulate_tvp: beta/theta dimension mismatch");
  require((spec.theta.array() >= 0.0).all(), "simulate_tvp: theta must be >= 0");
  require(spec.sigma2 > 0.0, "simulate_tvp: sigma2 must be > 0");

  Eigen::MatrixXd X(T, d);
  for (int t = 0; t < T; ++t) {
    X(t, 0) = 1.0;
    for (int j = 1; j < d; ++j) X(t, j) = draw_normal(rng);
  }

  Eigen::MatrixXd paths(T + 1, d);
  for (int j = 0; j < d; ++j) {
    const double sd = std::sqrt(spec.theta(j));
    paths(0, j) = spec.beta(j) + sd * std::sqrt(spec.c_P) * draw_normal(rng);
    for (int t = 1; t <= T; ++t) paths(t, j) = paths(t - 1, j) + sd * draw_normal(rng);
  }

  Eigen::VectorXd y(T);
  const double err_sd = std::sqrt(spec.sigma2);
  for (int t = 0; t < T; ++t)
    y(t) = X.row(t).dot(paths.row(t + 1)) + err_sd * draw_normal(rng);

  Dataset data{y, X, std::nullopt};
  SimTruth truth{spec.beta, spec.theta, spec.sigma2, paths};
  return {std::move(data), std::move(truth)};
}

Eigen::MatrixXd path_centered(const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                              const Eigen::MatrixXd& beta_tilde) {
  require(beta.size() == beta_tilde.cols() && sqrt_theta.size() == beta_tilde.cols(),
          "path_centered: dimension mismatch");
  Eigen::MatrixXd out = beta_tilde;
  for (int j = 0; j < beta_tilde.cols(); ++j)
    out.col(j) = beta(j) + sqrt_theta(j) * beta_tilde.col(j).array();
  return out;
}

Eigen::MatrixXd path_noncentered(const Eigen::MatrixXd& beta_path, const Eigen::VectorXd& beta,
                                 const Eigen::VectorXd& sqrt_theta) {
  require(beta.size() == beta_path.cols() && sqrt_theta.size() == beta_path.cols(),
          "path_noncentered: dimension mismatch");
  for (int j = 0; j < sqrt_theta.size(); ++j)
    if (sqrt_theta(j) == 0.0)
      throw std::invalid_argument("path_noncentered: sqrt_theta has an exact zero; caller must floor");
  Eigen::MatrixXd out = beta_path;
  for (int j = 0; j < beta_path.cols(); ++j)
    out.col(j) = (beta_path.col(j).array() - beta(j)) / sqrt_theta(j);
  return out;
}

}  // namespace tvp
