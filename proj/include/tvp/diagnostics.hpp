#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace tvp {

struct PosteriorSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> quantiles;  // one per requested level, type-7
};

PosteriorSummary posterior_summary(std::span<const double> draws,
                                   std::span<const double> quantile_levels);

// Type-7 empirical quantile of a draw sequence.
double quantile_type7(std::span<const double> draws, double level);

struct InefficiencyFactor {
  double value = 1.0;
  bool infinite = false;  // zero-variance chain
};

// IF = N / ESS with ESS from Geyer's initial monotone positive sequence
// estimator of the autocorrelation time.
InefficiencyFactor inefficiency_factor(std::span<const double> chain);

struct SimStudyMetrics {
  double avMSE = 0.0;
  double avVAR = 0.0;
  double avBIAS2 = 0.0;
};

// Table-1 metrics: E_i = draw mean, V_i = draw variance with divisor M,
// avVAR = mean_i V_i, avBIAS2 = mean_i (E_i - truth)^2, avMSE = sum of both.
SimStudyMetrics sim_study_metrics(const std::vector<Eigen::VectorXd>& draws_per_series,
                                  double truth);

}  // namespace tvp
