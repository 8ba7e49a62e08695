#include "tvp/banded.hpp"

#include <sstream>
#include <stdexcept>

namespace tvp {

PrecisionSystem build_precision(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta,
                                const Eigen::VectorXd& sqrt_theta,
                                const Eigen::VectorXd& sigma2_t, const Eigen::VectorXd& P0,
                                const Eigen::VectorXd& y) {
  const int T = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  if (beta.size() != d || sqrt_theta.size() != d || P0.size() != d || y.size() != T ||
      sigma2_t.size() != T)
    throw std::invalid_argument("build_precision: dimension mismatch");
  if ((sigma2_t.array() <= 0.0).any())
    throw std::invalid_argument("build_precision: sigma2_t must be > 0");
  if ((P0.array() <= 0.0).any())
    throw std::invalid_argument("build_precision: P0 must be > 0");

  PrecisionSystem sys;
  sys.diag.resize(T + 1);
  sys.off.assign(T, -Eigen::MatrixXd::Identity(d, d));
  sys.covector = Eigen::VectorXd::Zero((T + 1) * d);

  sys.diag[0] = Eigen::MatrixXd(P0.array().inverse().matrix().asDiagonal());
  sys.diag[0] += Eigen::MatrixXd::Identity(d, d);

  for (int t = 1; t <= T; ++t) {
    const Eigen::RowVectorXd F = X.row(t - 1).cwiseProduct(sqrt_theta.transpose());
    const double inv_s2 = 1.0 / sigma2_t(t - 1);
    sys.diag[t] = (F.transpose() * F) * inv_s2;
    sys.diag[t] += (t < T ? 2.0 : 1.0) * Eigen::MatrixXd::Identity(d, d);
    const double ystar = y(t - 1) - X.row(t - 1).dot(beta);
    sys.covector.segment(t * d, d) = F.transpose() * (inv_s2 * ystar);
  }
  return sys;
}

void band_cholesky(PrecisionSystem& sys) {
  const int n = sys.blocks();
  const int d = sys.block_dim();
  sys.chol_diag.resize(n);
  sys.chol_sub.resize(n > 0 ? n - 1 : 0);

  Eigen::MatrixXd S;
  for (int t = 0; t < n; ++t) {
    S = sys.diag[t];
    if (t > 0) S.noalias() -= sys.chol_sub[t - 1] * sys.chol_sub[t - 1].transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) {
      std::ostringstream os;
      os << "band_cholesky: block " << t << " is not positive definite";
      throw std::runtime_error(os.str());
    }
    sys.chol_diag[t] = llt.matrixL();
    if (t + 1 < n) {
      // L_{t+1,t} = Omega_{t,t+1}' L_tt^{-T}
      sys.chol_sub[t] = sys.chol_diag[t]
                            .triangularView<Eigen::Lower>()
                            .solve(sys.off[t])
                            .transpose();
    }
  }
  (void)d;
  sys.factored = true;
}

Eigen::VectorXd awol_draw(const PrecisionSystem& sys, const Eigen::VectorXd& eps) {
  if (!sys.factored) throw std::runtime_error("awol_draw: factor missing; call band_cholesky");
  const int n = sys.blocks();
  const int d = sys.block_dim();
  if (eps.size() != n * d) throw std::invalid_argument("awol_draw: eps dimension mismatch");

  // Forward: L a = c.
  Eigen::VectorXd a(n * d);
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd rhs = sys.covector.segment(t * d, d);
    if (t > 0) rhs.noalias() -= sys.chol_sub[t - 1] * a.segment((t - 1) * d, d);
    a.segment(t * d, d) = sys.chol_diag[t].triangularView<Eigen::Lower>().solve(rhs);
  }

  // Backward: L' x = a + eps.
  Eigen::VectorXd x(n * d);
  for (int t = n - 1; t >= 0; --t) {
    Eigen::VectorXd rhs = a.segment(t * d, d) + eps.segment(t * d, d);
    if (t + 1 < n) rhs.noalias() -= sys.chol_sub[t].transpose() * x.segment((t + 1) * d, d);
    x.segment(t * d, d) =
        sys.chol_diag[t].transpose().triangularView<Eigen::Upper>().solve(rhs);
  }
  return x;
}

}  // namespace tvp
