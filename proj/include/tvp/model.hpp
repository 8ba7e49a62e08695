#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tvp/rng.hpp"

namespace tvp {

enum class PriorVariant { DoubleGamma, BayesianLasso, InvertedGamma };

// Priors of the SV error model: mu ~ N(b_mu, B_mu), (phi+1)/2 ~ Beta(a0, b0),
// sigma2_eta ~ Gamma(1/2, 1/(2 B_sigma)).
struct SvPrior {
  double b_mu = 0.0;
  double B_mu = 100.0;
  double a0 = 20.0;
  double b0 = 1.5;
  double B_sigma = 1.0;
};

struct PriorConfig {
  PriorVariant variant = PriorVariant::DoubleGamma;

  double d1 = 0.001, d2 = 0.001;  // kappa2 ~ Gamma(d1, d2)
  double e1 = 0.001, e2 = 0.001;  // lambda2 ~ Gamma(e1, e2)
  double b_xi = 10.0, b_tau = 10.0;  // a^xi ~ Exp(b_xi), a^tau ~ Exp(b_tau)
  std::optional<double> fixed_a_xi;   // set => Step (d) skipped for a^xi
  std::optional<double> fixed_a_tau;

  // InvertedGamma variant: theta_j ~ IG(s0, S0), beta_j ~ N(0, A0_beta).
  double s0 = 0.1, S0 = 0.001;
  double A0_beta = 10.0;

  // Initial-state scales P0,jj ~ IG(nu_P, (nu_P - 1) c_P).
  double nu_P = 20.0, c_P = 1.0;

  // Homoscedastic error variance: sigma2 | C0 ~ IG(c0, C0), C0 ~ Gamma(g0, G0).
  double c0 = 2.5, g0 = 5.0;
  double sigma2_guess = 1.0;
  std::optional<double> G0;  // unset: g0 / (sigma2_guess (c0-1))

  bool sv = false;
  SvPrior sv_prior;

  double effective_G0() const { return G0 ? *G0 : g0 / (sigma2_guess * (c0 - 1.0)); }
  bool learn_a_xi() const {
    return variant == PriorVariant::DoubleGamma && !fixed_a_xi.has_value();
  }
  bool learn_a_tau() const {
    return variant == PriorVariant::DoubleGamma && !fixed_a_tau.has_value();
  }
  double a_xi_value() const;   // fixed value when not learned (Lasso: 1)
  double a_tau_value() const;
  void validate() const;  // throws std::invalid_argument naming the field
};

struct Dataset {
  Eigen::VectorXd y;  // T observations
  Eigen::MatrixXd X;  // T x d covariates
  std::optional<int> t0;  // training-sample cutoff for forecasting

  int T() const { return static_cast<int>(y.size()); }
  int d() const { return static_cast<int>(X.cols()); }
  void validate(bool allow_no_regressors = false) const;
};

// One complete set of latent states and parameters for a single chain.
struct ChainState {
  Eigen::MatrixXd beta_tilde;  // (T+1) x d non-centered states
  Eigen::VectorXd beta;        // d fixed coefficients
  Eigen::VectorXd sqrt_theta;  // d signed scales
  Eigen::VectorXd xi2;         // d
  Eigen::VectorXd tau2;        // d
  double a_xi = 0.1;
  double a_tau = 0.1;
  double kappa2 = 20.0;
  double lambda2 = 20.0;
  Eigen::VectorXd P0;          // d initial-state scales
  double sigma2 = 1.0;         // homoscedastic mode
  double C0 = 1.0;

  // SV mode: sigma2_t = exp(h_t), h follows the AR(1) of the error model.
  Eigen::VectorXd h;  // T+1 log-variances (h_0 .. h_T)
  double sv_mu = 0.0;
  double sv_phi = 0.95;
  double sv_sigma2_eta = 0.1;

  Eigen::VectorXd theta() const { return sqrt_theta.array().square(); }
};

struct SimTruth {
  Eigen::VectorXd beta_true;
  Eigen::VectorXd theta_true;
  double sigma2_true = 1.0;
  Eigen::MatrixXd paths;  // (T+1) x d true coefficient paths
};

// Centers and scales every non-intercept column to mean 0, sample sd 1.
// Returns the standardized matrix plus the per-column means and sds
// (intercept column reported as mean 0, sd 1 and left untouched).
struct Standardized {
  Eigen::MatrixXd X;
  Eigen::VectorXd means;
  Eigen::VectorXd sds;
};
Standardized standardize_covariates(const Eigen::MatrixXd& X,
                                    std::optional<int> intercept_col);

// Synthetic data from the random-walk TVP model: x_{t1} = 1, remaining
// covariates standard normal, beta_j0 ~ N(beta_j, theta_j c_P), increments
// N(0, theta_j), y_t = x_t beta_t + N(0, sigma2).
struct SimSpec {
  Eigen::VectorXd beta;
  Eigen::VectorXd theta;
  double sigma2 = 1.0;
  double c_P = 1.0;
};
std::pair<Dataset, SimTruth> simulate_tvp(int d, int T, const SimSpec& spec, Rng& rng);

// beta_jt = beta_j + sqrt(theta_j) * beta_tilde_jt
Eigen::MatrixXd path_centered(const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                              const Eigen::MatrixXd& beta_tilde);

// beta_tilde_jt = (beta_jt - beta_j) / sqrt(theta_j); requires sqrt_theta != 0.
Eigen::MatrixXd path_noncentered(const Eigen::MatrixXd& beta_path, const Eigen::VectorXd& beta,
                                 const Eigen::VectorXd& sqrt_theta);

}  // namespace tvp
