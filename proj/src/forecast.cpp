#include "tvp/forecast.hpp"

#include <cmath>
#include <stdexcept>

#include "tvp/math_util.hpp"
#include "tvp/sv.hpp"
#include "tvp/thread_pool.hpp"

namespace tvp {

KalmanState KalmanState::init(const Eigen::VectorXd& P0) {
  KalmanState ks;
  const int d = static_cast<int>(P0.size());
  ks.m = Eigen::VectorXd::Zero(d);
  ks.C = P0.asDiagonal();
  ks.R = ks.C;
  ks.K = Eigen::VectorXd::Zero(d);
  return ks;
}

KalmanState kalman_step(const KalmanState& ks, const Eigen::RowVectorXd& x_t,
                        const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                        double sigma2_t, double y_t) {
  if (!(sigma2_t > 0.0)) throw std::invalid_argument("kalman_step: sigma2_t must be > 0");
  const int d = static_cast<int>(x_t.size());
  KalmanState out;
  const Eigen::RowVectorXd F = x_t.cwiseProduct(sqrt_theta.transpose());
  out.R = ks.C + Eigen::MatrixXd::Identity(d, d);
  out.y_hat = x_t.dot(beta) + F.dot(ks.m);
  out.S = (F * out.R).dot(F) + sigma2_t;
  if (!(out.S > 0.0)) throw std::runtime_error("kalman_step: predictive variance not positive");
  out.K = out.R * F.transpose() / out.S;
  out.m = ks.m + out.K * (y_t - out.y_hat);
  out.C = (Eigen::MatrixXd::Identity(d, d) - out.K * F) * out.R;
  return out;
}

double kalman_loglik(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     const Eigen::VectorXd& beta, const Eigen::VectorXd& sqrt_theta,
                     const Eigen::VectorXd& sigma2_t, const Eigen::VectorXd& P0) {
  KalmanState ks = KalmanState::init(P0);
  double ll = 0.0;
  for (int t = 0; t < y.size(); ++t) {
    ks = kalman_step(ks, X.row(t), beta, sqrt_theta, sigma2_t(t), y(t));
    ll += log_normal_pdf(y(t), ks.y_hat, ks.S);
  }
  return ll;
}

void kalman_predictive(const Eigen::VectorXd& y_hist, const Eigen::MatrixXd& X_hist,
                       const Eigen::RowVectorXd& x_new, const Eigen::VectorXd& beta,
                       const Eigen::VectorXd& sqrt_theta, const Eigen::VectorXd& sigma2_hist,
                       double sigma2_new, const Eigen::VectorXd& P0, double& y_hat, double& S) {
  const int d = static_cast<int>(x_new.size());
  if (d == 0) {
    y_hat = 0.0;
    S = sigma2_new;
    return;
  }
  KalmanState ks = KalmanState::init(P0);
  for (int t = 0; t < y_hist.size(); ++t)
    ks = kalman_step(ks, X_hist.row(t), beta, sqrt_theta, sigma2_hist(t), y_hist(t));
  const Eigen::RowVectorXd F = x_new.cwiseProduct(sqrt_theta.transpose());
  const Eigen::MatrixXd R = ks.C + Eigen::MatrixXd::Identity(d, d);
  y_hat = x_new.dot(beta) + F.dot(ks.m);
  S = (F * R).dot(F) + sigma2_new;
}

double lpds_kalman_mixture(const DrawStore& draws, const Eigen::VectorXd& y_hist,
                           const Eigen::MatrixXd& X_hist, const Eigen::RowVectorXd& x_new,
                           double y_new, Rng& rng) {
  const int M = draws.size();
  if (M == 0) throw std::invalid_argument("lpds_kalman_mixture: empty draw store");
  const int n = static_cast<int>(y_hist.size());
  std::vector<double> comp(M);
  for (int m = 0; m < M; ++m) {
    Eigen::VectorXd sigma2_hist;
    double sigma2_new;
    if (draws.sv_mode()) {
      sigma2_hist = draws.h().row(m).segment(1, n).array().exp();
      SvState sv{draws.h().row(m).transpose(), draws.sv_mu()(m), draws.sv_phi()(m),
                 draws.sv_sigma2_eta()(m)};
      sigma2_new = forecast_h(sv, rng);
    } else {
      sigma2_hist = Eigen::VectorXd::Constant(n, draws.sigma2()(m));
      sigma2_new = draws.sigma2()(m);
    }
    double y_hat, S;
    kalman_predictive(y_hist, X_hist, x_new, draws.beta().row(m).transpose(),
                      draws.sqrt_theta().row(m).transpose(), sigma2_hist, sigma2_new,
                      draws.P0().row(m).transpose(), y_hat, S);
    comp[m] = log_normal_pdf(y_new, y_hat, S);
  }
  return log_sum_exp(comp) - std::log(static_cast<double>(M));
}

double lpds_naive_mixture(const DrawStore& draws, const Eigen::RowVectorXd& x_new, double y_new,
                          Rng& rng) {
  const int M = draws.size();
  if (M == 0) throw std::invalid_argument("lpds_naive_mixture: empty draw store");
  const int d = draws.dim();
  std::vector<double> comp(M);
  for (int m = 0; m < M; ++m) {
    double sigma2_new;
    if (draws.sv_mode()) {
      SvState sv{draws.h().row(m).transpose(), draws.sv_mu()(m), draws.sv_phi()(m),
                 draws.sv_sigma2_eta()(m)};
      sigma2_new = forecast_h(sv, rng);
    } else {
      sigma2_new = draws.sigma2()(m);
    }
    double mean = 0.0;
    for (int j = 0; j < d; ++j) {
      const double bt_new = draws.beta_tilde_last()(m, j) + draw_normal(rng);
      mean += x_new(j) * (draws.beta()(m, j) + draws.sqrt_theta()(m, j) * bt_new);
    }
    comp[m] = log_normal_pdf(y_new, mean, sigma2_new);
  }
  return log_sum_exp(comp) - std::log(static_cast<double>(M));
}

ScoreSeries cumulative_lpds(ScoreSeries series) {
  series.cum.resize(series.lpds.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.lpds.size(); ++i) {
    acc += series.lpds[i];
    series.cum[i] = acc;
  }
  return series;
}

RollingResult rolling_forecast(const Dataset& data, const PriorConfig& prior,
                               const SamplerSettings& settings, int t0,
                               const RollingOptions& opts, std::uint64_t seed) {
  const int T = data.T();
  if (t0 < 1 || t0 >= T)
    throw std::invalid_argument("rolling_forecast: t0 must lie in [1, T-1]");
  const int n_origins = T - t0;

  std::vector<double> kal(n_origins), nai(n_origins);
  std::vector<int> times(n_origins);

  auto score_origin = [&](int i, const ChainState* init, ChainState* final_state) {
    const int t = t0 + 1 + i;  // forecast target, 1-based
    Dataset hist{data.y.head(t - 1), data.X.topRows(t - 1), std::nullopt};
    SamplerSettings st = settings;
    if (init != nullptr) st.n_burnin = opts.warm_burnin;
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    const DrawStore draws = run_chain(hist, prior, st, rng, init, final_state);
    times[i] = t;
    if (opts.kalman)
      kal[i] = lpds_kalman_mixture(draws, hist.y, hist.X, data.X.row(t - 1), data.y(t - 1), rng);
    if (opts.naive)
      nai[i] = lpds_naive_mixture(draws, data.X.row(t - 1), data.y(t - 1), rng);
  };

  if (opts.warm_start) {
    ChainState carry;
    bool have_carry = false;
    for (int i = 0; i < n_origins; ++i) {
      ChainState init;
      const ChainState* initp = nullptr;
      if (have_carry) {
        init = carry;
        // One more observation enters the history: extend the latent paths by
        // repeating their final value (the random-walk predictive mean).
        const int rows = static_cast<int>(init.beta_tilde.rows());
        init.beta_tilde.conservativeResize(rows + 1, Eigen::NoChange);
        init.beta_tilde.row(rows) = init.beta_tilde.row(rows - 1);
        init.h.conservativeResize(rows + 1);
        init.h(rows) = init.h(rows - 1);
        initp = &init;
      }
      score_origin(i, initp, &carry);
      have_carry = true;
    }
  } else {
    parallel_for(n_origins, opts.threads, [&](int i) { score_origin(i, nullptr, nullptr); });
  }

  RollingResult out;
  out.kalman.t = times;
  out.naive.t = times;
  if (opts.kalman) {
    out.kalman.lpds = kal;
    out.kalman = cumulative_lpds(std::move(out.kalman));
  }
  if (opts.naive) {
    out.naive.lpds = nai;
    out.naive = cumulative_lpds(std::move(out.naive));
  }
  return out;
}

}  // namespace tvp
