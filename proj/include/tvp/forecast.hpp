#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvp/draws.hpp"
#include "tvp/model.hpp"
#include "tvp/rng.hpp"
#include "tvp/sampler.hpp"

namespace tvp {

// Kalman filter moments for the non-centered TVP model with known parameters.
struct KalmanState {
  Eigen::VectorXd m;  // filter mean of beta_tilde_t
  Eigen::MatrixXd C;  // filter covariance
  Eigen::MatrixXd R;  // propagated covariance C_{t-1} + I
  double y_hat = 0.0;
  double S = 0.0;  // predictive variance, >= sigma2_t
  Eigen::VectorXd K;

  static KalmanState init(const Eigen::VectorXd& P0);  // m0 = 0, C0 = Diag(P0)
};

// One propagation/prediction/correction cycle; returns the updated state.
KalmanState kalman_step(const KalmanState& ks, const Eigen::RowVectorXd& x_t,
                        const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                        double sigma2_t, double y_t);

// Filter log-likelihood sum_t log N(y_t; y_hat_t, S_t) over the whole sample.
double kalman_loglik(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                     const Eigen::VectorXd& sigma2_t, const Eigen::VectorXd& P0);

// Exact one-step-ahead predictive N(y_hat, S) of y at x_new after filtering
// the history.
void kalman_predictive(const Eigen::VectorXd& y_hist, const Eigen::MatrixXd& X_hist,
                       const Eigen::RowVectorXd& x_new, const Eigen::VectorXd& beta,
                       const Eigen::VectorXd& sqrt_theta, const Eigen::VectorXd& sigma2_hist,
                       double sigma2_new, const Eigen::VectorXd& P0, double& y_hat, double& S);

// Conditionally optimal Kalman mixture score: log (1/M) sum_m N(y_new; y_hat^m, S^m)
// via log-sum-exp. rng is consumed only in SV mode (one h forecast per draw).
double lpds_kalman_mixture(const DrawStore& draws, const Eigen::VectorXd& y_hist,
                           const Eigen::MatrixXd& X_hist, const Eigen::RowVectorXd& x_new,
                           double y_new, Rng& rng);

// Naive mixture score: components N(y_new; x_new beta_new^m, sigma2_new^m) with
// beta_new^m propagated from the stored final state.
double lpds_naive_mixture(const DrawStore& draws, const Eigen::RowVectorXd& x_new, double y_new,
                          Rng& rng);

struct ScoreSeries {
  std::vector<int> t;          // forecast origins (1-based time index)
  std::vector<double> lpds;    // per-time LPDS*_t
  std::vector<double> cum;     // prefix sums
};

ScoreSeries cumulative_lpds(ScoreSeries series);

struct RollingOptions {
  bool kalman = true;
  bool naive = false;
  bool warm_start = false;  // reuse previous origin's final state, short burn-in
  int warm_burnin = 100;
  int threads = 1;
};

struct RollingResult {
  ScoreSeries kalman;
  ScoreSeries naive;
};

// One full MCMC re-fit per forecast origin t = t0+1 .. T; scores y_t given
// y^{t-1} under the requested approximations.
RollingResult rolling_forecast(const Dataset& data, const PriorConfig& prior,
                               const SamplerSettings& settings, int t0,
                               const RollingOptions& opts, std::uint64_t seed);

}  // namespace tvp
