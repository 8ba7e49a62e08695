#include "tvp/sv.hpp"

#include <cmath>
#include <stdexcept>

#include "tvp/banded.hpp"
#include "tvp/gig.hpp"
#include "tvp/math_util.hpp"

namespace tvp {
namespace {

// 10-component Gaussian mixture approximation of log chi^2_1 noise
// (Omori, Chib, Shephard & Nakajima 2007).
constexpr int kMix = 10;
constexpr double kMixProb[kMix] = {0.00609, 0.04775, 0.13057, 0.20674, 0.22715,
                                   0.18842, 0.12047, 0.05591, 0.01575, 0.00115};
constexpr double kMixMean[kMix] = {1.92677,  1.34744,  0.73504,  0.02266,  -0.85173,
                                   -1.97278, -3.46788, -5.55246, -8.68384, -14.65000};
constexpr double kMixVar[kMix] = {0.11265, 0.17788, 0.26768, 0.40611, 0.62699,
                                  0.98583, 1.57469, 2.54498, 4.16591, 7.33342};

constexpr double kLogOffset = 1e-8;  // guards log of an exact zero residual
constexpr double kHClamp = 700.0;

void draw_indicators(const Eigen::VectorXd& ystar, const Eigen::VectorXd& h,
                     std::vector<int>& s, Rng& rng) {
  const int T = static_cast<int>(ystar.size());
  double logw[kMix];
  for (int t = 0; t < T; ++t) {
    double mx = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kMix; ++k) {
      logw[k] = std::log(kMixProb[k]) + log_normal_pdf(ystar(t), h(t + 1) + kMixMean[k], kMixVar[k]);
      mx = std::max(mx, logw[k]);
    }
    double total = 0.0;
    for (int k = 0; k < kMix; ++k) total += std::exp(logw[k] - mx);
    double u = draw_uniform(rng) * total;
    int pick = kMix - 1;
    for (int k = 0; k < kMix; ++k) {
      u -= std::exp(logw[k] - mx);
      if (u <= 0.0) {
        pick = k;
        break;
      }
    }
    s[t] = pick;
  }
}

// Joint draw of h - mu via the scalar block-tridiagonal AWOL machinery.
void draw_h_path(const Eigen::VectorXd& ystar, const std::vector<int>& s, SvState& sv, Rng& rng) {
  const int T = static_cast<int>(ystar.size());
  const double inv_se = 1.0 / sv.sigma2_eta;
  const double phi = sv.phi;

  PrecisionSystem sys;
  sys.diag.resize(T + 1);
  sys.off.assign(T, Eigen::MatrixXd::Constant(1, 1, -phi * inv_se));
  sys.covector = Eigen::VectorXd::Zero(T + 1);
  sys.diag[0] = Eigen::MatrixXd::Constant(1, 1, inv_se);  // (1-phi^2)/se + phi^2/se
  for (int t = 1; t <= T; ++t) {
    const double vinv = 1.0 / kMixVar[s[t - 1]];
    const double trans = (t < T) ? (1.0 + phi * phi) * inv_se : inv_se;
    sys.diag[t] = Eigen::MatrixXd::Constant(1, 1, vinv + trans);
    sys.covector(t) = (ystar(t - 1) - kMixMean[s[t - 1]] - sv.mu) * vinv;
  }
  band_cholesky(sys);
  Eigen::VectorXd eps(T + 1);
  for (int t = 0; t <= T; ++t) eps(t) = draw_normal(rng);
  sv.h = sv.mu + awol_draw(sys, eps).array();
}

void draw_sigma2_eta(SvState& sv, const SvPrior& prior, Rng& rng) {
  const int T = static_cast<int>(sv.h.size()) - 1;
  const Eigen::VectorXd g = sv.h.array() - sv.mu;
  double b = g(0) * g(0) * (1.0 - sv.phi * sv.phi);
  for (int t = 1; t <= T; ++t) {
    const double e = g(t) - sv.phi * g(t - 1);
    b += e * e;
  }
  sv.sigma2_eta = gig_draw(-0.5 * T, 1.0 / prior.B_sigma, b, rng);
}

void draw_phi(SvState& sv, const SvPrior& prior, Rng& rng) {
  const int T = static_cast<int>(sv.h.size()) - 1;
  const Eigen::VectorXd g = sv.h.array() - sv.mu;
  double sxx = 0.0, sxy = 0.0;
  for (int t = 1; t <= T; ++t) {
    sxx += g(t - 1) * g(t - 1);
    sxy += g(t) * g(t - 1);
  }
  auto log_extra = [&](double phi) {
    // stationary-init likelihood term plus the Beta((phi+1)/2; a0, b0) prior
    return 0.5 * std::log1p(-phi * phi) - g(0) * g(0) * (1.0 - phi * phi) / (2.0 * sv.sigma2_eta) +
           (prior.a0 - 1.0) * std::log1p(phi) + (prior.b0 - 1.0) * std::log1p(-phi);
  };
  if (sxx < 1e-300) {
    sv.phi = 2.0 * draw_beta(rng, prior.a0, prior.b0) - 1.0;
    return;
  }
  const double mean = sxy / sxx;
  const double sd = std::sqrt(sv.sigma2_eta / sxx);
  const double cand = mean + sd * draw_normal(rng);
  if (std::fabs(cand) >= 1.0) return;  // outside the stationary support
  if (std::log(draw_uniform(rng)) <= log_extra(cand) - log_extra(sv.phi)) sv.phi = cand;
}

void draw_mu_centered(SvState& sv, const SvPrior& prior, Rng& rng) {
  const int T = static_cast<int>(sv.h.size()) - 1;
  const double inv_se = 1.0 / sv.sigma2_eta;
  const double phi = sv.phi;
  double prec = 1.0 / prior.B_mu + (1.0 - phi * phi) * inv_se;
  double rhs = prior.b_mu / prior.B_mu + sv.h(0) * (1.0 - phi * phi) * inv_se;
  for (int t = 1; t <= T; ++t) {
    prec += (1.0 - phi) * (1.0 - phi) * inv_se;
    rhs += (1.0 - phi) * (sv.h(t) - phi * sv.h(t - 1)) * inv_se;
  }
  sv.mu = rhs / prec + draw_normal(rng) / std::sqrt(prec);
}

}  // namespace

void sample_sv_states(const Eigen::VectorXd& residuals, SvState& sv, Rng& rng) {
  const int T = static_cast<int>(residuals.size());
  if (static_cast<int>(sv.h.size()) != T + 1)
    throw std::invalid_argument("sample_sv_states: h must have T+1 entries");
  Eigen::VectorXd ystar(T);
  for (int t = 0; t < T; ++t) ystar(t) = std::log(residuals(t) * residuals(t) + kLogOffset);
  std::vector<int> s(T);
  draw_indicators(ystar, sv.h, s, rng);
  draw_h_path(ystar, s, sv, rng);
}

long sample_sv_block(const Eigen::VectorXd& residuals, SvState& sv, const SvPrior& prior,
                     Rng& rng) {
  const int T = static_cast<int>(residuals.size());
  if (static_cast<int>(sv.h.size()) != T + 1)
    throw std::invalid_argument("sample_sv_block: h must have T+1 entries");

  Eigen::VectorXd ystar(T);
  for (int t = 0; t < T; ++t)
    ystar(t) = std::log(residuals(t) * residuals(t) + kLogOffset);

  std::vector<int> s(T);
  draw_indicators(ystar, sv.h, s, rng);
  draw_h_path(ystar, s, sv, rng);
  draw_sigma2_eta(sv, prior, rng);
  draw_phi(sv, prior, rng);
  draw_mu_centered(sv, prior, rng);

  // ASIS: redraw (mu, s_eta) in the non-centered parametrization.
  {
    const double s_eta = std::sqrt(sv.sigma2_eta);
    const Eigen::VectorXd htilde = (sv.h.array() - sv.mu) / s_eta;
    Eigen::Matrix2d prec = Eigen::Matrix2d::Zero();
    Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
    for (int t = 1; t <= T; ++t) {
      const double vinv = 1.0 / kMixVar[s[t - 1]];
      const double z1 = htilde(t);
      const double yst = ystar(t - 1) - kMixMean[s[t - 1]];
      prec(0, 0) += vinv;
      prec(0, 1) += z1 * vinv;
      prec(1, 1) += z1 * z1 * vinv;
      rhs(0) += yst * vinv;
      rhs(1) += yst * z1 * vinv;
    }
    prec(1, 0) = prec(0, 1);
    prec(0, 0) += 1.0 / prior.B_mu;
    prec(1, 1) += 1.0 / prior.B_sigma;
    rhs(0) += prior.b_mu / prior.B_mu;

    const Eigen::LLT<Eigen::Matrix2d> llt(prec);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("sample_sv_block: ASIS posterior not positive definite");
    Eigen::Vector2d mean = llt.solve(rhs);
    Eigen::Vector2d z{draw_normal(rng), draw_normal(rng)};
    const Eigen::Vector2d draw =
        mean + llt.matrixU().solve(z);  // L^-T z has covariance prec^-1
    sv.mu = draw(0);
    const double new_s_eta = draw(1);
    sv.sigma2_eta = std::max(new_s_eta * new_s_eta, 1e-300);
    sv.h = sv.mu + new_s_eta * htilde.array();
  }

  long clamped = 0;
  for (int t = 0; t <= T; ++t) {
    if (sv.h(t) > kHClamp) {
      sv.h(t) = kHClamp;
      ++clamped;
    } else if (sv.h(t) < -kHClamp) {
      sv.h(t) = -kHClamp;
      ++clamped;
    }
  }
  return clamped;
}

double forecast_h(const SvState& sv, Rng& rng) {
  const double hT = sv.h(sv.h.size() - 1);
  const double mean = sv.mu + sv.phi * (hT - sv.mu);
  double hdraw = mean + std::sqrt(sv.sigma2_eta) * draw_normal(rng);
  hdraw = std::clamp(hdraw, -kHClamp, kHClamp);
  return std::exp(hdraw);
}

}  // namespace tvp
