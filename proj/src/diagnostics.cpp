#include "tvp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvp/math_util.hpp"

namespace tvp {

double quantile_type7(std::span<const double> draws, double level) {
  if (draws.empty()) throw std::invalid_argument("quantile_type7: empty input");
  if (level < 0.0 || level > 1.0) throw std::invalid_argument("quantile_type7: level in [0,1]");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * level;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

PosteriorSummary posterior_summary(std::span<const double> draws,
                                   std::span<const double> quantile_levels) {
  if (draws.size() < 2) throw std::invalid_argument("posterior_summary: needs at least 2 draws");
  PosteriorSummary out;
  out.mean = mean_of(draws);
  out.sd = std::sqrt(var_of(draws));
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  for (double q : quantile_levels)
    out.quantiles.push_back(quantile_type7(std::span<const double>(sorted), q));
  return out;
}

InefficiencyFactor inefficiency_factor(std::span<const double> chain) {
  const std::size_t n = chain.size();
  if (n < 100) throw std::invalid_argument("inefficiency_factor: needs at least 100 draws");
  const double mean = mean_of(chain);
  double gamma0 = 0.0;
  for (double x : chain) gamma0 += (x - mean) * (x - mean);
  gamma0 /= static_cast<double>(n);
  if (!(gamma0 > 0.0)) return {std::numeric_limits<double>::infinity(), true};

  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = lag; t < n; ++t) s += (chain[t] - mean) * (chain[t - lag] - mean);
    return s / static_cast<double>(n);
  };

  // Geyer: sum adjacent-pair autocovariances Gamma_m = gamma_{2m} + gamma_{2m+1}
  // while positive, enforcing monotone non-increase.
  const std::size_t max_lag = std::min(n - 1, static_cast<std::size_t>(20000));
  double tau = -gamma0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; 2 * m < max_lag; ++m) {
    double pair = autocov(2 * m);
    if (2 * m + 1 < n) pair += autocov(2 * m + 1);
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  return {std::max(tau / gamma0, 0.0), false};
}

SimStudyMetrics sim_study_metrics(const std::vector<Eigen::VectorXd>& draws_per_series,
                                  double truth) {
  if (draws_per_series.empty())
    throw std::invalid_argument("sim_study_metrics: needs at least one series");
  SimStudyMetrics out;
  for (const auto& draws : draws_per_series) {
    const double e_i = draws.mean();
    const double v_i = (draws.array() - e_i).square().sum() / draws.size();
    out.avVAR += v_i;
    out.avBIAS2 += (e_i - truth) * (e_i - truth);
  }
  const double n = static_cast<double>(draws_per_series.size());
  out.avVAR /= n;
  out.avBIAS2 /= n;
  out.avMSE = out.avVAR + out.avBIAS2;
  return out;
}

}  // namespace tvp
