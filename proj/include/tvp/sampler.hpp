#pragma once

#include "tvp/draws.hpp"
#include "tvp/model.hpp"
#include "tvp/rng.hpp"

namespace tvp {

struct SamplerSettings {
  int n_burnin = 1000;
  int n_draws = 10000;
  int thin = 1;
  double c_tau = 1.0;  // MH random-walk sd for log a^tau
  double c_xi = 1.0;   // MH random-walk sd for log a^xi
  double sqrt_theta_floor = 1e-12;
  bool adapt_mh = false;     // Robbins-Monro during burn-in, target 0.30
  bool interweave = true;    // Step (c) on/off
  bool fix_sigma2 = false;   // skip Step (f); sigma2 held at its start value
  bool store_paths = false;  // keep full non-centered state paths per draw

  void validate() const;
};

// Counters a single sweep reports back to the chain driver.
struct SweepStats {
  long mh_xi_attempts = 0, mh_xi_accepts = 0;
  long mh_tau_attempts = 0, mh_tau_accepts = 0;
  long degenerate_gig = 0;
  long h_clamped = 0;
};

// Algorithm steps. Each updates the relevant part of the state in place.
void step_a_states(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng);
void step_b_alpha(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng);
void step_c_interweave(ChainState& s, const Dataset& data, const PriorConfig& prior,
                       double sqrt_theta_floor, Rng& rng, SweepStats* stats = nullptr);
void step_d_mh_exponents(ChainState& s, const PriorConfig& prior, double c_tau, double c_xi,
                         Rng& rng, SweepStats* stats = nullptr);
void step_e_prior_variances(ChainState& s, const PriorConfig& prior, Rng& rng);
void step_f_sigma2(ChainState& s, const Dataset& data, const PriorConfig& prior, Rng& rng);
void step_g_P0(ChainState& s, const PriorConfig& prior, Rng& rng);
void step_theta_inverted_gamma(ChainState& s, const Dataset& data, const PriorConfig& prior,
                               double sqrt_theta_floor, Rng& rng);

// Residuals y_t - x_t beta - F_t beta_tilde_t of the expanded regression.
Eigen::VectorXd expanded_residuals(const ChainState& s, const Dataset& data);

// Error variances sigma2_t for t = 1..T (constant or exp(h_t)).
Eigen::VectorXd sigma2_path(const ChainState& s, int T, bool sv);

// Default starting values (paper gives none; see README).
ChainState default_start(const Dataset& data, const PriorConfig& prior);

// One full sweep of Algorithm 1 in the printed order
// (a),(b),(c),(d),(e),(f or SV),(g); the InvertedGamma variant replaces
// (b)-(e) with the centered theta/beta update.
void gibbs_sweep(ChainState& s, const Dataset& data, const PriorConfig& prior,
                 const SamplerSettings& settings, Rng& rng, SweepStats& stats);

DrawStore run_chain(const Dataset& data, const PriorConfig& prior,
                    const SamplerSettings& settings, Rng& rng,
                    const ChainState* init = nullptr, ChainState* final_state = nullptr);

}  // namespace tvp
