#pragma once

#include <Eigen/Dense>

#include "tvp/model.hpp"
#include "tvp/rng.hpp"

namespace tvp {

// Log-volatility block of the error model: sigma2_t = exp(h_t) with
// h_t | h_{t-1} ~ N(mu + phi (h_{t-1} - mu), sigma2_eta) and
// h_0 ~ N(mu, sigma2_eta / (1 - phi^2)).
struct SvState {
  Eigen::VectorXd h;  // T+1 entries, h_0 .. h_T
  double mu = 0.0;
  double phi = 0.95;
  double sigma2_eta = 0.1;
};

// One update of (h, mu, phi, sigma2_eta) given the current observation
// residuals: auxiliary 10-component mixture linearization, joint AWOL h-draw,
// centered parameter draws, and one centered/non-centered interweaving move.
// Returns the number of h entries clamped to [-700, 700] (0 in normal runs).
long sample_sv_block(const Eigen::VectorXd& residuals, SvState& sv, const SvPrior& prior,
                     Rng& rng);

// States-only update: draws the mixture indicators and the joint h path with
// (mu, phi, sigma2_eta) held fixed.
void sample_sv_states(const Eigen::VectorXd& residuals, SvState& sv, Rng& rng);

// sigma2_{T+1} forecast: exp of one draw from N(mu + phi (h_T - mu), sigma2_eta).
double forecast_h(const SvState& sv, Rng& rng);

}  // namespace tvp
