#include "tvp/cholesky_mv.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tvp/thread_pool.hpp"

namespace tvp {

CholeskySystem build_row_regressions(const Eigen::MatrixXd& Y,
                                     std::vector<std::string> column_order) {
  const int T = static_cast<int>(Y.rows());
  const int r = static_cast<int>(Y.cols());
  if (r < 1 || T < 2) throw std::invalid_argument("build_row_regressions: needs r >= 1, T >= 2");
  if (!Y.allFinite()) throw std::invalid_argument("build_row_regressions: missing values in Y");
  if (column_order.empty())
    for (int i = 1; i <= r; ++i) column_order.push_back("y" + std::to_string(i));
  if (static_cast<int>(column_order.size()) != r)
    throw std::invalid_argument("build_row_regressions: column_order size mismatch");

  CholeskySystem sys;
  sys.Y = Y;
  sys.column_order = std::move(column_order);
  sys.rows.reserve(r);
  for (int i = 0; i < r; ++i)
    sys.rows.push_back(Dataset{Y.col(i), Y.leftCols(i), std::nullopt});
  return sys;
}

void fit_cholesky_sv(CholeskySystem& sys, const PriorConfig& prior,
                     const SamplerSettings& settings, std::uint64_t master_seed, int threads) {
  if (!prior.sv)
    throw std::invalid_argument("fit_cholesky_sv: the Cholesky model requires sv = true");
  SamplerSettings st = settings;
  st.store_paths = true;  // Sigma_t reconstruction needs the state paths
  const int r = sys.r();
  sys.row_draws.assign(r, DrawStore{});
  parallel_for(r, threads, [&](int i) {
    Rng rng(split_seed(master_seed, static_cast<std::uint64_t>(i)));
    try {
      sys.row_draws[i] = run_chain(sys.rows[i], prior, st, rng);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "fit_cholesky_sv: row " << (i + 1) << " failed: " << e.what();
      throw std::runtime_error(os.str());
    }
  });
}

Eigen::MatrixXd reconstruct_sigma(const CholeskySystem& sys, int t, int m) {
  const int r = sys.r();
  if (t < 1 || t > sys.T()) throw std::invalid_argument("reconstruct_sigma: t out of range");
  Eigen::MatrixXd Ainv = Eigen::MatrixXd::Identity(r, r);
  Eigen::VectorXd dvec(r);
  for (int i = 0; i < r; ++i) {
    const DrawStore& ds = sys.row_draws.at(i);
    if (m < 0 || m >= ds.size()) throw std::invalid_argument("reconstruct_sigma: draw index");
    if (i > 0) {
      const Eigen::MatrixXd bt = ds.beta_tilde(m);
      for (int j = 0; j < i; ++j) {
        const double beta_ijt = ds.beta()(m, j) + ds.sqrt_theta()(m, j) * bt(t, j);
        Ainv(i, j) = -beta_ijt;  // Phi_{ij,t}
      }
    }
    dvec(i) = std::exp(ds.h()(m, t));
  }
  // Sigma = A D A' with A = Ainv^{-1}; B = A sqrt(D) keeps it exactly
  // symmetric positive definite.
  Eigen::MatrixXd B = Ainv.triangularView<Eigen::UnitLower>().solve(
      Eigen::MatrixXd(dvec.array().sqrt().matrix().asDiagonal()));
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(r, r);
  sigma.selfadjointView<Eigen::Lower>().rankUpdate(B);
  sigma.triangularView<Eigen::StrictlyUpper>() =
      sigma.triangularView<Eigen::StrictlyLower>().transpose();
  return sigma;
}

double multivariate_lpds(const Eigen::VectorXd& row_scores) {
  double total = 0.0;
  for (int i = 0; i < row_scores.size(); ++i) {
    if (std::isnan(row_scores(i))) {
      std::ostringstream os;
      os << "multivariate_lpds: missing score for row " << (i + 1);
      throw std::runtime_error(os.str());
    }
    total += row_scores(i);
  }
  return total;
}

}  // namespace tvp
