#include "tvp/sampler.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tvp/banded.hpp"
#include "tvp/gig.hpp"
#include "tvp/math_util.hpp"
#include "tvp/ng_marginal.hpp"
#include "tvp/sv.hpp"

namespace tvp {
namespace {

constexpr double kTiny = 1e-300;

// Builds the T x 2d expanded regression matrix with rows
// z_t = (x_t, x_t .* beta_tilde_t).
Eigen::MatrixXd expanded_design(const ChainState& s, const Dataset& data) {
  const int T = data.T();
  const int d = data.d();
  Eigen::MatrixXd W(T, 2 * d);
  for (int t = 0; t < T; ++t) {
    W.block(t, 0, 1, d) = data.X.row(t);
    W.block(t, d, 1, d) = data.X.row(t).cwiseProduct(s.beta_tilde.row(t + 1));
  }
  return W;
}

double signed_floor(double value, double floor_abs, double fallback_sign) {
  if (std::fabs(value) >= floor_abs) return value;
  const double sign = (value > 0.0) ? 1.0 : (value < 0.0 ? -1.0 : fallback_sign);
  return sign * floor_abs;
}

}  // namespace

void SamplerSettings::validate() const {
  if (n_draws < 0 || n_burnin < 0) throw std::invalid_argument("sampler: negative draw counts");
  if (thin < 1) throw std::invalid_argument("sampler: thin must be >= 1");
  if (!(c_tau > 0.0) || !(c_xi > 0.0)) throw std::invalid_argument("sampler: c_tau, c_xi must be > 0");
  if (!(sqrt_theta_floor > 0.0)) throw std::invalid_argument("sampler: sqrt_theta_floor must be > 0");
}

Eigen::VectorXd sigma2_path(const ChainState& s, int T, bool sv) {
  if (!sv) return Eigen::VectorXd::Constant(T, s.sigma2);
  return s.h.tail(T).array().exp();
}

Eigen::VectorXd expanded_residuals(const ChainState& s, const Dataset& data) {
  const int T = data.T();
  Eigen::VectorXd r(T);
  for (int t = 0; t < T; ++t) {
    const double fit = data.X.row(t).dot(s.beta) +
                       data.X.row(t).cwiseProduct(s.sqrt_theta.transpose())
                           .dot(s.beta_tilde.row(t + 1));
    r(t) = data.y(t) - fit;
  }
  return r;
}

void step_a_states(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng) {
  const int T = data.T();
  const int d = data.d();
  if (d == 0) return;
  PrecisionSystem sys = build_precision(data.X, s.beta, s.sqrt_theta,
                                        sigma2_path(s, T, prior.sv), s.P0, data.y);
  band_cholesky(sys);
  Eigen::VectorXd eps((T + 1) * d);
  for (int i = 0; i < eps.size(); ++i) eps(i) = draw_normal(rng);
  const Eigen::VectorXd flat = awol_draw(sys, eps);
  s.beta_tilde = Eigen::Map<const Eigen::MatrixXd>(flat.data(), d, T + 1).transpose();
}

void step_b_alpha(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng) {
  const int T = data.T();
  const int d = data.d();
  if (d == 0) return;
  const Eigen::MatrixXd W = expanded_design(s, data);
  const Eigen::VectorXd inv_s2 = sigma2_path(s, T, prior.sv).array().inverse();

  Eigen::VectorXd a0_sqrt(2 * d);
  for (int j = 0; j < d; ++j) {
    a0_sqrt(j) = std::sqrt(std::max(s.tau2(j), kTiny));
    a0_sqrt(d + j) = std::sqrt(std::max(s.xi2(j), kTiny));
  }

  // A_T = A0^{1/2} (A0^{1/2} W' S^{-1} W A0^{1/2} + I)^{-1} A0^{1/2}
  const Eigen::MatrixXd WtW = W.transpose() * inv_s2.asDiagonal() * W;
  Eigen::MatrixXd M = a0_sqrt.asDiagonal() * WtW * a0_sqrt.asDiagonal();
  M += Eigen::MatrixXd::Identity(2 * d, 2 * d);
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("step_b_alpha: inner matrix not positive definite");

  const Eigen::VectorXd v =
      a0_sqrt.asDiagonal() * (W.transpose() * inv_s2.cwiseProduct(data.y));
  Eigen::VectorXd z(2 * d);
  for (int i = 0; i < 2 * d; ++i) z(i) = draw_normal(rng);
  const Eigen::VectorXd inner =
      llt.matrixL().solve(v) + z;  // L^{-1} v + eps
  const Eigen::VectorXd alpha =
      a0_sqrt.asDiagonal() * llt.matrixU().solve(inner);  // A0^{1/2} L^{-T} (.)

  s.beta = alpha.head(d);
  s.sqrt_theta = alpha.tail(d);
}

void step_c_interweave(ChainState& s, const Dataset& data, const PriorConfig& prior,
                       double sqrt_theta_floor, Rng& rng, SweepStats* stats) {
  const int T = data.T();
  const int d = data.d();
  for (int j = 0; j < d; ++j) {
    const double s_old = s.sqrt_theta(j);
    const double sign = (s_old >= 0.0) ? 1.0 : -1.0;

    // (c-1)/(c-2) theta from its GIG posterior. The centered increments are
    // beta_jt - beta_j,t-1 = s_old (bt_t - bt_{t-1}) and beta_j0 - beta_j =
    // s_old bt_0; evaluating them in this factored form avoids the rounding
    // absorption of beta + s_old*bt when |s_old| is many orders below |beta|.
    double incr = s.beta_tilde(0, j) * s.beta_tilde(0, j) / s.P0(j);
    for (int t = 1; t <= T; ++t) {
      const double diff = s.beta_tilde(t, j) - s.beta_tilde(t - 1, j);
      incr += diff * diff;
    }
    const double bsum = s_old * s_old * incr;
    double theta_new;
    if (bsum == 0.0) {
      // Degenerate constant path: documented inverse-gamma fallback.
      theta_new = draw_inv_gamma(rng, 0.5 * T, 1.0 / (2.0 * std::max(s.xi2(j), kTiny)));
      if (stats) ++stats->degenerate_gig;
    } else {
      theta_new = gig_draw(-0.5 * T, 1.0 / std::max(s.xi2(j), kTiny), bsum, rng);
    }
    const double path0 = s.beta(j) + s_old * s.beta_tilde(0, j);
    const double tp = theta_new * s.P0(j);
    const double denom = s.tau2(j) + tp;
    const double mean = path0 * s.tau2(j) / denom;
    const double var = s.tau2(j) * tp / denom;
    const double beta_new = mean + std::sqrt(var) * draw_normal(rng);

    // (c-3) back to the non-centered parametrization, keeping the sign:
    // bt_new = (beta_old - beta_new)/s_new + (s_old/s_new) bt_old, again in
    // the factored form so the state variation survives the transform.
    const double s_new = sign * std::sqrt(theta_new);
    const double divisor = signed_floor(s_new, sqrt_theta_floor, sign);
    const double offset = (s.beta(j) - beta_new) / divisor;
    s.beta_tilde.col(j) = offset + (s_old / divisor) * s.beta_tilde.col(j).array();
    s.beta(j) = beta_new;
    s.sqrt_theta(j) = s_new;
  }
}

void step_d_mh_exponents(ChainState& s, const PriorConfig& prior, double c_tau, double c_xi,
                         Rng& rng, SweepStats* stats) {
  auto mh_update = [&](double current, double rw_sd, double exp_rate,
                       const Eigen::VectorXd& values, double global2, bool& accepted) {
    const double cand = current * std::exp(rw_sd * draw_normal(rng));
    if (!(cand > 0.0) || !std::isfinite(cand)) {
      accepted = false;
      return current;  // proposal left the representable support
    }
    double log_r = -exp_rate * (cand - current) + std::log(cand) - std::log(current);
    for (int j = 0; j < values.size(); ++j) {
      const double x = std::max(std::fabs(values(j)), kTiny);
      log_r += log_ng_marginal(x, cand, global2) - log_ng_marginal(x, current, global2);
    }
    accepted = std::isfinite(log_r) && std::log(draw_uniform(rng)) <= log_r;
    return accepted ? cand : current;
  };

  if (prior.learn_a_tau()) {
    bool acc = false;
    s.a_tau = mh_update(s.a_tau, c_tau, prior.b_tau, s.beta, s.lambda2, acc);
    if (stats) {
      ++stats->mh_tau_attempts;
      stats->mh_tau_accepts += acc;
    }
  }
  if (prior.learn_a_xi()) {
    bool acc = false;
    s.a_xi = mh_update(s.a_xi, c_xi, prior.b_xi, s.sqrt_theta, s.kappa2, acc);
    if (stats) {
      ++stats->mh_xi_attempts;
      stats->mh_xi_accepts += acc;
    }
  }
}

void step_e_prior_variances(ChainState& s, const PriorConfig& prior, Rng& rng) {
  const int d = static_cast<int>(s.beta.size());
  for (int j = 0; j < d; ++j) {
    s.tau2(j) = gig_draw(s.a_tau - 0.5, s.a_tau * s.lambda2, s.beta(j) * s.beta(j), rng);
    s.xi2(j) = gig_draw(s.a_xi - 0.5, s.a_xi * s.kappa2,
                        s.sqrt_theta(j) * s.sqrt_theta(j), rng);
  }
  if (d > 0) {
    const double mean_tau2 = s.tau2.mean();
    const double mean_xi2 = s.xi2.mean();
    // Gamma draws with shapes near zero can underflow to an exact 0, which is
    // an artifact of double range, not of the prior; keep them representable.
    s.lambda2 = std::max(
        draw_gamma(rng, prior.e1 + s.a_tau * d, prior.e2 + 0.5 * mean_tau2 * s.a_tau * d), kTiny);
    s.kappa2 = std::max(
        draw_gamma(rng, prior.d1 + s.a_xi * d, prior.d2 + 0.5 * mean_xi2 * s.a_xi * d), kTiny);
  }
}

void step_f_sigma2(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng) {
  const Eigen::VectorXd r = expanded_residuals(s, data);
  const double ssr = r.squaredNorm();
  s.sigma2 = draw_inv_gamma(rng, prior.c0 + 0.5 * data.T(), s.C0 + 0.5 * ssr);
  s.C0 = draw_gamma(rng, prior.g0 + prior.c0, prior.effective_G0() + 1.0 / s.sigma2);
}

void step_g_P0(ChainState& s, const PriorConfig& prior, Rng& rng) {
  for (int j = 0; j < s.P0.size(); ++j) {
    const double bt0 = s.beta_tilde(0, j);
    s.P0(j) = draw_inv_gamma(rng, prior.nu_P + 0.5,
                             (prior.nu_P - 1.0) * prior.c_P + 0.5 * bt0 * bt0);
  }
}

void step_theta_inverted_gamma(ChainState& s, const Dataset& data, const PriorConfig& prior,
                               double sqrt_theta_floor, Rng& rng) {
  const int T = data.T();
  const int d = data.d();
  for (int j = 0; j < d; ++j) {
    const double s_old = s.sqrt_theta(j);
    double incr = 0.0;
    for (int t = 1; t <= T; ++t) {
      const double diff = s.beta_tilde(t, j) - s.beta_tilde(t - 1, j);
      incr += diff * diff;
    }
    const double dev0 = s_old * s.beta_tilde(0, j);
    const double scale =
        prior.S0 + 0.5 * s_old * s_old * incr + dev0 * dev0 / (2.0 * s.P0(j));
    const double theta_new = draw_inv_gamma(rng, prior.s0 + 0.5 * (T + 1), scale);

    const double path0 = s.beta(j) + dev0;
    const double tp = theta_new * s.P0(j);
    const double denom = prior.A0_beta + tp;
    const double beta_new = path0 * prior.A0_beta / denom +
                            std::sqrt(prior.A0_beta * tp / denom) * draw_normal(rng);

    const double s_new = std::sqrt(theta_new);
    const double divisor = signed_floor(s_new, sqrt_theta_floor, 1.0);
    const double offset = (s.beta(j) - beta_new) / divisor;
    s.beta_tilde.col(j) = offset + (s_old / divisor) * s.beta_tilde.col(j).array();
    s.beta(j) = beta_new;
    s.sqrt_theta(j) = s_new;
  }
}

ChainState default_start(const Dataset& data, const PriorConfig& prior) {
  const int T = data.T();
  const int d = data.d();
  ChainState s;
  s.beta_tilde = Eigen::MatrixXd::Zero(T + 1, d);
  s.beta = Eigen::VectorXd::Zero(d);
  s.sqrt_theta = Eigen::VectorXd::Constant(d, 0.1);
  s.xi2 = Eigen::VectorXd::Ones(d);
  s.tau2 = Eigen::VectorXd::Ones(d);
  s.a_xi = prior.learn_a_xi() ? 0.1 : prior.a_xi_value();
  s.a_tau = prior.learn_a_tau() ? 0.1 : prior.a_tau_value();
  s.kappa2 = 20.0;
  s.lambda2 = 20.0;
  s.P0 = Eigen::VectorXd::Ones(d);
  const double var_y = std::max(var_of(std::span<const double>(data.y.data(), data.y.size())), 1e-8);
  s.sigma2 = var_y;
  s.C0 = prior.g0 / prior.effective_G0();
  s.h = Eigen::VectorXd::Constant(T + 1, std::log(var_y));
  s.sv_mu = std::log(var_y);
  s.sv_phi = 0.95;
  s.sv_sigma2_eta = 0.1;
  if (prior.variant == PriorVariant::InvertedGamma) {
    s.tau2 = Eigen::VectorXd::Constant(d, prior.A0_beta);
    s.a_xi = 1.0;
    s.a_tau = 1.0;
  }
  return s;
}

void gibbs_sweep(ChainState& s, const Dataset& data, const PriorConfig& prior,
                 const SamplerSettings& settings, Rng& rng, SweepStats& stats) {
  step_a_states(s, data, prior, rng);
  if (prior.variant == PriorVariant::InvertedGamma) {
    step_theta_inverted_gamma(s, data, prior, settings.sqrt_theta_floor, rng);
  } else {
    step_b_alpha(s, data, prior, rng);
    if (settings.interweave)
      step_c_interweave(s, data, prior, settings.sqrt_theta_floor, rng, &stats);
    step_d_mh_exponents(s, prior, settings.c_tau, settings.c_xi, rng, &stats);
    step_e_prior_variances(s, prior, rng);
    // The target is invariant under (sqrt_theta_j, bt_j) -> -(sqrt_theta_j, bt_j),
    // but none of the conditional draws can cross the zero bridge once a
    // coefficient is strongly time-varying. A fair-coin reflection restores the
    // symmetric marginal of sqrt(theta_j) without touching the distribution.
    for (int j = 0; j < data.d(); ++j) {
      if (draw_uniform(rng) < 0.5) {
        s.sqrt_theta(j) = -s.sqrt_theta(j);
        s.beta_tilde.col(j) = -s.beta_tilde.col(j);
      }
    }
  }
  if (prior.sv) {
    SvState sv{s.h, s.sv_mu, s.sv_phi, s.sv_sigma2_eta};
    stats.h_clamped += sample_sv_block(expanded_residuals(s, data), sv, prior.sv_prior, rng);
    s.h = sv.h;
    s.sv_mu = sv.mu;
    s.sv_phi = sv.phi;
    s.sv_sigma2_eta = sv.sigma2_eta;
  } else if (!settings.fix_sigma2) {
    step_f_sigma2(s, data, prior, rng);
  }
  step_g_P0(s, prior, rng);
}

DrawStore run_chain(const Dataset& data, const PriorConfig& prior,
                    const SamplerSettings& settings, Rng& rng, const ChainState* init,
                    ChainState* final_state) {
  data.validate(true);
  prior.validate();
  settings.validate();

  ChainState s = init ? *init : default_start(data, prior);
  const int n_store = settings.n_draws / settings.thin;
  DrawStore store(data.T(), data.d(), prior.sv, settings.store_paths, n_store);

  SweepStats stats;
  double c_tau = settings.c_tau, c_xi = settings.c_xi;
  const int total = settings.n_burnin + settings.n_draws;
  long post_xi_att = 0, post_xi_acc = 0, post_tau_att = 0, post_tau_acc = 0;

  for (int sweep = 1; sweep <= total; ++sweep) {
    SweepStats sw;
    SamplerSettings cur = settings;
    cur.c_tau = c_tau;
    cur.c_xi = c_xi;
    try {
      gibbs_sweep(s, data, prior, cur, rng, sw);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "run_chain: sweep " << sweep << " failed: " << e.what();
      throw std::runtime_error(os.str());
    }
    stats.degenerate_gig += sw.degenerate_gig;
    stats.h_clamped += sw.h_clamped;

    if (sweep <= settings.n_burnin && settings.adapt_mh) {
      // Robbins-Monro toward 0.30 acceptance, frozen after burn-in.
      const double gain = std::pow(static_cast<double>(sweep), -0.6);
      if (sw.mh_xi_attempts > 0)
        c_xi *= std::exp(gain * ((sw.mh_xi_accepts > 0 ? 1.0 : 0.0) - 0.30));
      if (sw.mh_tau_attempts > 0)
        c_tau *= std::exp(gain * ((sw.mh_tau_accepts > 0 ? 1.0 : 0.0) - 0.30));
    }
    if (sweep > settings.n_burnin) {
      post_xi_att += sw.mh_xi_attempts;
      post_xi_acc += sw.mh_xi_accepts;
      post_tau_att += sw.mh_tau_attempts;
      post_tau_acc += sw.mh_tau_accepts;
      const int k = sweep - settings.n_burnin;
      if (k % settings.thin == 0 && store.size() < n_store) {
        if (!s.beta_tilde.allFinite())
          throw std::runtime_error("run_chain: non-finite state after sweep");
        store.push(s);
      }
    }
  }

  store.accept_rate_a_xi = post_xi_att > 0 ? double(post_xi_acc) / double(post_xi_att) : 0.0;
  store.accept_rate_a_tau = post_tau_att > 0 ? double(post_tau_acc) / double(post_tau_att) : 0.0;
  store.degenerate_gig_count = stats.degenerate_gig;
  store.h_clamp_count = stats.h_clamped;
  if (final_state != nullptr) *final_state = s;
  return store;
}

}  // namespace tvp
