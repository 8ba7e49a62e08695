#include <doctest.h>

#include <cmath>
#include <span>
#include <vector>

#include "support/quadrature.hpp"
#include "support/stats.hpp"
#include "tvp/diagnostics.hpp"
#include "tvp/math_util.hpp"
#include "tvp/sv.hpp"

using namespace tvp;

namespace {

// Omori et al. 10-component table, restated here as the oracle's view of the
// auxiliary model.
constexpr int kMix = 10;
constexpr double kP[kMix] = {0.00609, 0.04775, 0.13057, 0.20674, 0.22715,
                             0.18842, 0.12047, 0.05591, 0.01575, 0.00115};
constexpr double kM[kMix] = {1.92677,  1.34744,  0.73504,  0.02266,  -0.85173,
                             -1.97278, -3.46788, -5.55246, -8.68384, -14.65000};
constexpr double kV[kMix] = {0.11265, 0.17788, 0.26768, 0.40611, 0.62699,
                             0.98583, 1.57469, 2.54498, 4.16591, 7.33342};

double log_mix_lik(double ystar, double h) {
  double comps[kMix];
  for (int k = 0; k < kMix; ++k) {
    const double d = ystar - h - kM[k];
    comps[k] = std::log(kP[k]) - 0.5 * (std::log(2.0 * M_PI * kV[k]) + d * d / kV[k]);
  }
  return tvp::log_sum_exp(std::span<const double>(comps, kMix));
}

SvState prior_sv_draw(const SvPrior& prior, int T, Rng& rng) {
  SvState sv;
  sv.mu = prior.b_mu + std::sqrt(prior.B_mu) * draw_normal(rng);
  sv.phi = 2.0 * draw_beta(rng, prior.a0, prior.b0) - 1.0;
  const double s_eta = std::sqrt(prior.B_sigma) * draw_normal(rng);
  sv.sigma2_eta = std::max(s_eta * s_eta, 1e-12);
  sv.h.resize(T + 1);
  sv.h(0) = sv.mu + std::sqrt(sv.sigma2_eta / (1.0 - sv.phi * sv.phi)) * draw_normal(rng);
  for (int t = 1; t <= T; ++t)
    sv.h(t) = sv.mu + sv.phi * (sv.h(t - 1) - sv.mu) +
              std::sqrt(sv.sigma2_eta) * draw_normal(rng);
  return sv;
}

Eigen::VectorXd residuals_given_h(const SvState& sv, Rng& rng) {
  const int T = static_cast<int>(sv.h.size()) - 1;
  Eigen::VectorXd r(T);
  for (int t = 1; t <= T; ++t) r(t - 1) = std::exp(0.5 * sv.h(t)) * draw_normal(rng);
  return r;
}

}  // namespace

TEST_SUITE("sv") {

TEST_CASE("forecast_h deterministic limits") {
  SvState sv;
  sv.h = Eigen::VectorXd::Constant(4, 2.0);
  sv.mu = 0.7;
  sv.phi = 1.0;
  sv.sigma2_eta = 0.0;
  Rng rng(1);
  sv.sigma2_eta = 1e-30;
  CHECK(forecast_h(sv, rng) == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
}

TEST_CASE("forecast_h conditional mean") {
  SvState sv;
  sv.h = Eigen::VectorXd::Zero(3);
  sv.h(2) = 2.0;
  sv.mu = 0.0;
  sv.phi = 0.5;
  sv.sigma2_eta = 0.09;
  // conditional mean of the h draw is mu + phi (h_T - mu) = 1
  Rng rng(2);
  const int N = 1000000;
  std::vector<double> hs(N);
  for (auto& h : hs) h = std::log(forecast_h(sv, rng));
  CHECK(oracle::check_mean(hs, 1.0).within(4.0));

  // phi = 0: mean of log draws equals mu
  sv.phi = 0.0;
  sv.mu = -0.4;
  for (auto& h : hs) h = std::log(forecast_h(sv, rng));
  CHECK(oracle::check_mean(hs, -0.4).within(4.0));
}

TEST_CASE("states-only update matches the per-timepoint quadrature oracle at phi = 0") {
  // With phi = 0 and fixed (mu, sigma2_eta) every h_t, t >= 1, is conditionally
  // independent with density ~ N(h; mu, sigma2_eta) * sum_k w_k N(ystar; h+m_k, v_k).
  const double mu = -1.0, s2eta = 0.5;
  Eigen::VectorXd resid(3);
  resid << 0.8, -0.05, 2.5;
  SvState sv;
  sv.mu = mu;
  sv.phi = 0.0;
  sv.sigma2_eta = s2eta;
  sv.h = Eigen::VectorXd::Constant(4, mu);

  Rng rng(3);
  const int N = 200000;
  Eigen::MatrixXd hs(N, 3);
  for (int i = 0; i < N; ++i) {
    sample_sv_states(resid, sv, rng);
    hs.row(i) = sv.h.tail(3).transpose();
  }
  for (int t = 0; t < 3; ++t) {
    const double ystar = std::log(resid(t) * resid(t) + 1e-8);
    auto logpost = [&](double h) {
      return -0.5 * (h - mu) * (h - mu) / s2eta + log_mix_lik(ystar, h);
    };
    const double log_z = oracle::log_integrate_exp(logpost, mu - 30.0, mu + 30.0);
    auto logpost_m1 = [&](double h) { return logpost(h) + std::log(std::fabs(h) + 1e-300); };
    // first moment via E|h| decomposition is awkward; integrate h directly on
    // a shifted positive scale instead
    (void)logpost_m1;
    const double shift = 60.0;
    auto log_h_shift = [&](double h) { return logpost(h) + std::log(h + shift); };
    const double mean_shift =
        std::exp(oracle::log_integrate_exp(log_h_shift, mu - 30.0, mu + 30.0) - log_z);
    const double target_mean = mean_shift - shift;
    std::vector<double> col(N);
    for (int i = 0; i < N; ++i) col[i] = hs(i, t);
    const auto chk = oracle::check_mean(col, target_mean);
    INFO("t=", t, " sample=", chk.sample, " target=", chk.target, " se=", chk.se);
    CHECK(chk.within(5.0));
    // second moment
    auto log_h2 = [&](double h) { return logpost(h) + 2.0 * std::log(std::fabs(h - target_mean) + 1e-12); };
    const double target_var =
        std::exp(oracle::log_integrate_exp(log_h2, mu - 30.0, mu + 30.0) - log_z);
    const auto vchk = oracle::check_variance(col, target_var);
    INFO("t=", t, " var sample=", vchk.sample, " target=", vchk.target);
    CHECK(vchk.within(5.0));
  }
}

TEST_CASE("prior recovery of (mu, phi, sigma2_eta) via successive-conditional simulation") {
  // The block targets the auxiliary-mixture linearization (a documented
  // modelling approximation), so the oracle regenerates residuals whose
  // log r^2 noise follows that mixture exactly. B_mu stays inside the range
  // where the log(r^2 + 1e-8) offset guard cannot floor the observations.
  SvPrior prior;
  prior.B_mu = 4.0;
  const int T = 30;
  Rng rng(4);

  // forward reference sample
  const int M = 4000;
  std::vector<double> f_mu(M), f_phi(M), f_s2(M);
  for (int i = 0; i < M; ++i) {
    const SvState sv = prior_sv_draw(prior, T, rng);
    f_mu[i] = sv.mu;
    f_phi[i] = sv.phi;
    f_s2[i] = sv.sigma2_eta;
  }

  SvState sv = prior_sv_draw(prior, T, rng);
  Eigen::VectorXd resid(T);
  auto regen = [&] {
    for (int t = 1; t <= T; ++t) {
      double u = tvp::draw_uniform(rng);
      int k = kMix - 1;
      for (int j = 0; j < kMix; ++j) {
        u -= kP[j];
        if (u <= 0.0) {
          k = j;
          break;
        }
      }
      const double lr2 = sv.h(t) + kM[k] + std::sqrt(kV[k]) * draw_normal(rng);
      resid(t - 1) = std::exp(0.5 * lr2);
    }
  };
  regen();
  const int sweeps = 40000, thin = 10;
  std::vector<double> g_mu, g_phi, g_s2;
  for (int i = 0; i < sweeps; ++i) {
    sample_sv_block(resid, sv, prior, rng);
    regen();
    if ((i + 1) % thin == 0) {
      g_mu.push_back(sv.mu);
      g_phi.push_back(sv.phi);
      g_s2.push_back(sv.sigma2_eta);
    }
  }
  // KS with the chain's effective sample size (the draws stay dependent
  // even after thinning).
  auto n_eff = [](const std::vector<double>& v) {
    return v.size() / std::max(tvp::inefficiency_factor(v).value, 1.0);
  };
  CHECK(oracle::ks_two_sample_pvalue(f_mu, g_mu, 0.0, n_eff(g_mu)) > 1e-3);
  CHECK(oracle::ks_two_sample_pvalue(f_phi, g_phi, 0.0, n_eff(g_phi)) > 1e-3);
  CHECK(oracle::ks_two_sample_pvalue(f_s2, g_s2, 0.0, n_eff(g_s2)) > 1e-3);
  // moment-level agreement, error bars from the chain's own inefficiency
  const double se_mu = std::sqrt(oracle::variance(g_mu) *
                                 std::max(tvp::inefficiency_factor(g_mu).value, 1.0) /
                                 g_mu.size());
  CHECK(std::fabs(oracle::mean(g_mu)) < 4.0 * se_mu);
  CHECK(std::sqrt(oracle::variance(g_mu)) == doctest::Approx(2.0).epsilon(0.1));

  // With true chi-squared noise the recovery is approximate (the mixture is
  // an approximation): the first two moments still line up closely.
  SvState sv2 = prior_sv_draw(prior, T, rng);
  Eigen::VectorXd r2 = residuals_given_h(sv2, rng);
  std::vector<double> mu2;
  for (int i = 0; i < 20000; ++i) {
    sample_sv_block(r2, sv2, prior, rng);
    r2 = residuals_given_h(sv2, rng);
    if ((i + 1) % 10 == 0) mu2.push_back(sv2.mu);
  }
  CHECK(std::fabs(oracle::mean(mu2)) < 0.3);
  CHECK(std::sqrt(oracle::variance(mu2)) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("stationarity and clamping invariants") {
  SvPrior prior;
  Rng rng(5);
  SvState sv = prior_sv_draw(prior, 50, rng);
  Eigen::VectorXd resid = residuals_given_h(sv, rng);
  long clamped = 0;
  for (int i = 0; i < 2000; ++i) {
    clamped += sample_sv_block(resid, sv, prior, rng);
    CHECK(std::fabs(sv.phi) < 1.0);
    CHECK(sv.sigma2_eta > 0.0);
  }
  CHECK(clamped == 0);
}

TEST_CASE("fixed seed reproducibility") {
  SvPrior prior;
  Rng r1(6), r2(6);
  SvState a = prior_sv_draw(prior, 20, r1);
  SvState b = prior_sv_draw(prior, 20, r2);
  Eigen::VectorXd ra = residuals_given_h(a, r1);
  Eigen::VectorXd rb = residuals_given_h(b, r2);
  sample_sv_block(ra, a, prior, r1);
  sample_sv_block(rb, b, prior, r2);
  CHECK(a.h == b.h);
  CHECK(a.mu == b.mu);
  CHECK(a.phi == b.phi);
  CHECK(a.sigma2_eta == b.sigma2_eta);
}

}  // TEST_SUITE
