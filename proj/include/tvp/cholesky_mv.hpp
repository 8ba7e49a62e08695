#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tvp/draws.hpp"
#include "tvp/model.hpp"
#include "tvp/sampler.hpp"

namespace tvp {

// Row-wise decomposition of an r-variate series under the time-varying
// Cholesky factorization Sigma_t = A_t D_t A_t'. Row i regresses y_{i,t} on
// (y_{1,t}, ..., y_{i-1,t}) with no intercept; row 1 is a pure SV model.
// The column order is recorded and immutable: inference is not invariant to
// reordering.
struct CholeskySystem {
  Eigen::MatrixXd Y;  // T x r
  std::vector<std::string> column_order;
  std::vector<Dataset> rows;       // r datasets with the triangular design
  std::vector<DrawStore> row_draws;

  int r() const { return static_cast<int>(Y.cols()); }
  int T() const { return static_cast<int>(Y.rows()); }
};

CholeskySystem build_row_regressions(const Eigen::MatrixXd& Y,
                                     std::vector<std::string> column_order = {});

// Fits every row independently with the interweaved sampler + SV block.
// Per-row seeds derive from the master seed (split_seed(master, row)), so
// results are identical for any execution order or parallelism degree.
void fit_cholesky_sv(CholeskySystem& sys, const PriorConfig& prior,
                     const SamplerSettings& settings, std::uint64_t master_seed, int threads);

// Sigma_t for draw m: unit-lower-triangular A_t^{-1} with subdiagonal entries
// Phi_{ij,t} = -beta_{ij,t}^{(m)}, D_t = Diag(exp(h_{i,t}^{(m)})); returns
// A_t D_t A_t', exactly symmetric and positive definite by construction.
// t is the 1-based observation index.
Eigen::MatrixXd reconstruct_sigma(const CholeskySystem& sys, int t, int m);

// LPDS*_t = sum_i LPDS*_{i,t}; throws when any row score is missing (NaN).
double multivariate_lpds(const Eigen::VectorXd& row_scores);

}  // namespace tvp
