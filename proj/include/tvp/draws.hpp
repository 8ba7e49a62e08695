#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tvp/model.hpp"

namespace tvp {

// Thinned post-burn-in draws, one column block per parameter (column-major).
// Centered coefficient paths are reconstructed on demand from
// (beta, sqrt_theta, beta_tilde) instead of being stored.
class DrawStore {
 public:
  DrawStore() = default;
  DrawStore(int T, int d, bool sv_mode, bool store_paths, int capacity);

  void push(const ChainState& state);

  int size() const { return count_; }
  int dim() const { return d_; }
  int horizon() const { return T_; }
  bool sv_mode() const { return sv_mode_; }
  bool has_paths() const { return store_paths_; }

  const Eigen::MatrixXd& beta() const { return beta_; }
  const Eigen::MatrixXd& sqrt_theta() const { return sqrt_theta_; }
  const Eigen::MatrixXd& xi2() const { return xi2_; }
  const Eigen::MatrixXd& tau2() const { return tau2_; }
  const Eigen::MatrixXd& P0() const { return P0_; }
  const Eigen::VectorXd& a_xi() const { return a_xi_; }
  const Eigen::VectorXd& a_tau() const { return a_tau_; }
  const Eigen::VectorXd& kappa2() const { return kappa2_; }
  const Eigen::VectorXd& lambda2() const { return lambda2_; }
  const Eigen::VectorXd& sigma2() const { return sigma2_; }
  const Eigen::VectorXd& C0() const { return C0_; }
  const Eigen::VectorXd& sv_mu() const { return sv_mu_; }
  const Eigen::VectorXd& sv_phi() const { return sv_phi_; }
  const Eigen::VectorXd& sv_sigma2_eta() const { return sv_sigma2_eta_; }
  const Eigen::MatrixXd& h() const { return h_; }                    // M x (T+1)
  const Eigen::MatrixXd& beta_tilde_last() const { return bt_last_; }  // M x d
  const Eigen::MatrixXd& state_paths() const { return paths_; }  // M x ((T+1) d)

  // Non-centered states of draw m as a (T+1) x d matrix (store_paths only).
  Eigen::MatrixXd beta_tilde(int m) const;
  // Centered path beta_jt = beta_j + sqrt(theta_j) beta_tilde_jt of draw m.
  Eigen::MatrixXd centered_path(int m) const;

  // Scalar series by name for summaries and draw files.
  std::vector<std::string> series_names() const;
  Eigen::VectorXd series(const std::string& name) const;

  static DrawStore merge(const std::vector<DrawStore>& parts);

  // Run health, filled by run_chain.
  double accept_rate_a_xi = 0.0;
  double accept_rate_a_tau = 0.0;
  long degenerate_gig_count = 0;
  long h_clamp_count = 0;

 private:
  int T_ = 0, d_ = 0, count_ = 0;
  bool sv_mode_ = false, store_paths_ = false;
  Eigen::MatrixXd beta_, sqrt_theta_, xi2_, tau2_, P0_, bt_last_, h_, paths_;
  Eigen::VectorXd a_xi_, a_tau_, kappa2_, lambda2_, sigma2_, C0_;
  Eigen::VectorXd sv_mu_, sv_phi_, sv_sigma2_eta_;
};

}  // namespace tvp
