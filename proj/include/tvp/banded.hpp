#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tvp {

// Symmetric positive definite block-tridiagonal precision matrix Omega with
// covector c, the joint Gaussian N(Omega^{-1} c, Omega^{-1}) over stacked
// states (block 0 .. block n-1). All solves run block-by-block; no inverse
// is ever formed.
struct PrecisionSystem {
  std::vector<Eigen::MatrixXd> diag;  // n blocks, each d x d, symmetric
  std::vector<Eigen::MatrixXd> off;   // n-1 blocks Omega_{t,t+1}
  Eigen::VectorXd covector;           // n*d

  // Lower block-bidiagonal Cholesky factor, Omega = L L'.
  std::vector<Eigen::MatrixXd> chol_diag;  // L_tt (lower triangular)
  std::vector<Eigen::MatrixXd> chol_sub;   // L_{t+1,t}
  bool factored = false;

  int blocks() const { return static_cast<int>(diag.size()); }
  int block_dim() const { return diag.empty() ? 0 : static_cast<int>(diag.front().rows()); }
};

// Precision system of the non-centered TVP state draw (Step (a)):
//   Omega_00 = Diag(1/P0) + I,  Omega_tt = F_t' F_t / sigma2_t + 2 I,
//   Omega_TT = F_T' F_T / sigma2_T + I,  Omega_{t,t+1} = -I,
//   c_0 = 0,  c_t = F_t' (y_t - x_t beta) / sigma2_t,
// with F_t = x_t Diag(sqrt_theta).
PrecisionSystem build_precision(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta,
                                const Eigen::VectorXd& sqrt_theta,
                                const Eigen::VectorXd& sigma2_t, const Eigen::VectorXd& P0,
                                const Eigen::VectorXd& y);

// In-place block Cholesky; throws std::runtime_error naming the failing block
// when a pivot is not positive definite.
void band_cholesky(PrecisionSystem& sys);

// Draw Omega^{-1} c + L^{-T} eps by solving L a = c then L' x = a + eps.
// eps = 0 returns the exact mean Omega^{-1} c.
Eigen::VectorXd awol_draw(const PrecisionSystem& sys, const Eigen::VectorXd& eps);

}  // namespace tvp
